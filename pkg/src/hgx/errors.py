"""Exception hierarchy shared by every module."""


class HgxError(ValueError):
    """Base class for domain errors (CLI exit code 1)."""


class NonUniformEdge(HgxError):
    pass


class DuplicateEdge(HgxError):
    pass


class VertexOutOfRange(HgxError):
    pass


class UniformityMismatch(HgxError):
    pass


class ArityUnderflow(HgxError):
    pass


class ArityTooSmall(HgxError):
    pass


class ArityExceedsVertices(HgxError):
    pass


class NotTwoChromatic(HgxError):
    pass


class NoEdges(HgxError):
    pass


class ChromaticTooSmall(HgxError):
    pass


class NoCrosscut(HgxError):
    pass


class NoProperColoring(HgxError):
    """A 1-uniform hypergraph with an edge cannot be properly colored."""


class BadParams(HgxError):
    pass


class FormatError(HgxError):
    """Malformed ``.hg`` input."""


class DivisionByZero(HgxError, ZeroDivisionError):
    pass
