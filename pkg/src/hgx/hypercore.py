"""Uniform hypergraphs and the primitives the rest of the package builds on.

Vertices are the labels ``0..n-1``; every edge is a strictly increasing
``r``-tuple.  Internally edges are also available as vertex bitmasks, which
keeps the embedding search and the solver's edge tests O(1).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Iterable, Sequence

from hgx.errors import (
    ArityUnderflow,
    DuplicateEdge,
    FormatError,
    NonUniformEdge,
    UniformityMismatch,
    VertexOutOfRange,
)

Edge = tuple[int, ...]


def bits(mask: int) -> Iterable[int]:
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


@dataclass(frozen=True)
class Hypergraph:
    """An ``r``-uniform hypergraph on vertices ``0..n-1``.

    The constructor only normalizes (each edge sorted, edge list sorted);
    call :func:`validate` to enforce the invariants on untrusted input.
    Generators in this package produce valid hypergraphs by construction.
    """

    r: int
    n: int
    edges: tuple[Edge, ...] = ()

    def __post_init__(self):
        edges = tuple(sorted(tuple(sorted(int(v) for v in e)) for e in self.edges))
        object.__setattr__(self, "edges", edges)

    @classmethod
    def empty(cls, r: int, n: int) -> Hypergraph:
        return cls(r, n, ())

    @classmethod
    def complete(cls, r: int, n: int) -> Hypergraph:
        return cls(r, n, itertools.combinations(range(n), r))

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def masks(self) -> tuple[int, ...]:
        return tuple(to_mask(e) for e in self.edges)

    @cached_property
    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        deg = [0] * self.n
        for e in self.edges:
            for v in e:
                deg[v] += 1
        return tuple(deg)

    @cached_property
    def incidence(self) -> tuple[tuple[Edge, ...], ...]:
        inc: list[list[Edge]] = [[] for _ in range(self.n)]
        for e in self.edges:
            for v in e:
                inc[v].append(e)
        return tuple(tuple(x) for x in inc)

    def degree(self, v: int) -> int:
        return self.degrees[v]

    def relabel(self, perm: Sequence[int]) -> Hypergraph:
        """Image of ``self`` under the vertex permutation ``v -> perm[v]``."""
        return Hypergraph(self.r, self.n, (tuple(perm[v] for v in e) for e in self.edges))

    def with_edges(self, extra: Iterable[Iterable[int]]) -> Hypergraph:
        return Hypergraph(self.r, self.n, list(self.edges) + [tuple(e) for e in extra])

    def __repr__(self):
        return f"Hypergraph(r={self.r}, n={self.n}, m={self.m})"


@dataclass(frozen=True)
class Embedding:
    """Witness that a pattern is a (non-induced) subhypergraph of a host."""

    map: tuple[int, ...]
    edge_images: tuple[Edge, ...]


def validate(H: Hypergraph) -> Hypergraph:
    """Check the hypergraph invariants and return ``H`` unchanged."""
    if H.r < 1:
        raise NonUniformEdge(f"uniformity must be >= 1, got r={H.r}")
    if H.n < 0:
        raise VertexOutOfRange(f"vertex count must be >= 0, got n={H.n}")
    seen = set()
    for e in H.edges:
        if len(e) != H.r or len(set(e)) != H.r:
            raise NonUniformEdge(f"edge {list(e)} does not have {H.r} distinct vertices")
        if e[0] < 0 or e[-1] >= H.n:
            raise VertexOutOfRange(f"edge {list(e)} uses a vertex outside 0..{H.n - 1}")
        if e in seen:
            raise DuplicateEdge(f"edge {list(e)} appears more than once")
        seen.add(e)
    return H


def _check_vertices(H: Hypergraph, vertices: Iterable[int]) -> frozenset[int]:
    vs = frozenset(vertices)
    for v in vs:
        if not 0 <= v < H.n:
            raise VertexOutOfRange(f"vertex {v} outside 0..{H.n - 1}")
    return vs


# -- embedding search ---------------------------------------------------------


class _Host:
    __slots__ = ("n", "all", "emasks", "shadow", "nbr", "deg_at_least")

    def __init__(self, H: Hypergraph):
        self.n = H.n
        self.all = (1 << H.n) - 1
        self.emasks = frozenset(H.masks)
        shadow = set()
        for e in H.edges:
            for k in range(1, H.r):
                for sub in itertools.combinations(e, k):
                    shadow.add(to_mask(sub))
        self.shadow = shadow
        nbr = [0] * H.n
        for mask in H.masks:
            for v in bits(mask):
                nbr[v] |= mask
        self.nbr = [nbr[v] & ~(1 << v) for v in range(H.n)]
        maxdeg = max(H.degrees, default=0)
        self.deg_at_least = [
            to_mask(v for v in range(H.n) if H.degrees[v] >= d) for d in range(maxdeg + 2)
        ]


class _Pattern:
    __slots__ = ("n", "order", "isolated", "steps", "deg", "nbr")

    def __init__(self, F: Hypergraph):
        self.n = F.n
        deg = F.degrees
        self.deg = deg
        self.isolated = [v for v in range(F.n) if deg[v] == 0]
        # most-constrained first, ties by label
        self.order = sorted((v for v in range(F.n) if deg[v] > 0), key=lambda v: (-deg[v], v))
        nbr = [set() for _ in range(F.n)]
        for e in F.edges:
            for v in e:
                nbr[v].update(u for u in e if u != v)
        self.nbr = nbr
        self.steps = self._steps(F, self.order)

    @staticmethod
    def _steps(F, order):
        pos = {v: i for i, v in enumerate(order)}
        steps = []
        for j, v in enumerate(order):
            checks = []
            for e in F.incidence[v]:
                placed = tuple(u for u in e if pos[u] <= j)
                checks.append((placed, len(placed) == len(e)))
            steps.append(checks)
        return steps


def _search(pat: _Pattern, host: _Host, fixed: dict[int, int]) -> dict[int, int] | None:
    """Depth-first search for an injective edge-preserving map extending ``fixed``."""
    if pat.n > host.n:
        return None
    for v, x in fixed.items():
        if not 0 <= x < host.n:
            return None
    if len(set(fixed.values())) != len(fixed):
        return None
    order = pat.order
    steps = pat.steps
    mapping: dict[int, int] = {}
    fixed_isolated = [v for v in pat.isolated if v in fixed]
    free_isolated = len(pat.isolated) - len(fixed_isolated)
    used0 = to_mask(fixed[v] for v in fixed_isolated)
    for v in fixed_isolated:
        mapping[v] = fixed[v]

    deg_at_least = host.deg_at_least
    emasks = host.emasks
    shadow = host.shadow
    hnbr = host.nbr
    depth = len(order)

    def rec(j: int, used: int) -> bool:
        if j == depth:
            return host.n - bin(used).count("1") >= free_isolated
        v = order[j]
        d = pat.deg[v]
        if d >= len(deg_at_least):
            return False
        cand = deg_at_least[d] & ~used
        if v in fixed:
            cand &= 1 << fixed[v]
        for u in pat.nbr[v]:
            x = mapping.get(u)
            if x is not None:
                cand &= hnbr[x]
        checks = steps[j]
        while cand:
            low = cand & -cand
            cand ^= low
            x = low.bit_length() - 1
            mapping[v] = x
            ok = True
            for placed, full in checks:
                img = 0
                for u in placed:
                    img |= 1 << mapping[u]
                if full:
                    if img not in emasks:
                        ok = False
                        break
                elif img not in shadow:
                    ok = False
                    break
            if ok and rec(j + 1, used | low):
                return True
        mapping.pop(v, None)
        return False

    if rec(0, used0):
        return dict(mapping)
    return None


class _Embedder:
    """Prepared pattern/host pair; reused when many queries hit one host."""

    def __init__(self, F: Hypergraph, H: Hypergraph):
        if F.r != H.r:
            raise UniformityMismatch(f"pattern is {F.r}-uniform but host is {H.r}-uniform")
        self.F = F
        self.H = H
        self.pat = _Pattern(F)
        self.host = _Host(H)

    def exists(self) -> bool:
        return _search(self.pat, self.host, {}) is not None

    def least(self) -> Embedding | None:
        if _search(self.pat, self.host, {}) is None:
            return None
        fixed: dict[int, int] = {}
        for v in range(self.F.n):
            for x in range(self.H.n):
                if x in fixed.values():
                    continue
                trial = dict(fixed)
                trial[v] = x
                if _search(self.pat, self.host, trial) is not None:
                    fixed = trial
                    break
            else:  # pragma: no cover - existence was established above
                raise AssertionError("embedding vanished during lexicographic extraction")
        images = tuple(tuple(sorted(fixed[u] for u in e)) for e in self.F.edges)
        return Embedding(tuple(fixed[v] for v in range(self.F.n)), images)


def is_subhypergraph(F: Hypergraph, H: Hypergraph) -> Embedding | None:
    """Lexicographically least embedding of ``F`` into ``H``, or ``None``.

    Containment is non-induced; pattern vertices without edges only need a
    spare host vertex.
    """
    return _Embedder(F, H).least()


def contains(F: Hypergraph, H: Hypergraph) -> bool:
    """Existence-only form of :func:`is_subhypergraph`."""
    return _Embedder(F, H).exists()


def is_free(H: Hypergraph, family: Iterable[Hypergraph]) -> bool:
    """True iff no member of ``family`` embeds into ``H``."""
    members = list(family)
    for F in members:
        if F.r != H.r:
            raise UniformityMismatch(f"family member is {F.r}-uniform but host is {H.r}-uniform")
    host = _Host(H)
    return all(_search(_Pattern(F), host, {}) is None for F in members)


# -- local operations ---------------------------------------------------------


def link(H: Hypergraph, v: int) -> Hypergraph:
    """The ``(r-1)``-graph of ``e - {v}`` over edges ``e`` containing ``v``.

    The result lives on the other ``n-1`` vertices, relabeled in order.
    """
    if H.r < 2:
        raise ArityUnderflow("the link of a 1-uniform hypergraph is undefined")
    if not 0 <= v < H.n:
        raise VertexOutOfRange(f"vertex {v} outside 0..{H.n - 1}")
    shift = lambda u: u - 1 if u > v else u  # noqa: E731
    edges = [tuple(shift(u) for u in e if u != v) for e in H.incidence[v]]
    return Hypergraph(H.r - 1, H.n - 1, edges)


def delete_vertices(H: Hypergraph, S: Iterable[int]) -> Hypergraph:
    """Remove ``S`` and every edge meeting it, relabeling survivors in order."""
    gone = _check_vertices(H, S)
    if not gone:
        return H
    keep = [v for v in range(H.n) if v not in gone]
    new = {v: i for i, v in enumerate(keep)}
    edges = [tuple(new[u] for u in e) for e in H.edges if not gone.intersection(e)]
    return Hypergraph(H.r, len(keep), edges)


def induced(H: Hypergraph, S: Iterable[int]) -> Hypergraph:
    """Subhypergraph induced on ``S`` (relabeled in order)."""
    keep = _check_vertices(H, S)
    return delete_vertices(H, [v for v in range(H.n) if v not in keep])


def is_weakly_independent(H: Hypergraph, S: Iterable[int]) -> bool:
    """True iff no edge of ``H`` lies entirely inside ``S``."""
    mask = to_mask(_check_vertices(H, S))
    return all(e & ~mask for e in H.masks)


# -- canonical labeling -------------------------------------------------------


def _refine(incidence, cells: list[list[int]]) -> list[list[int]]:
    while True:
        cell_of = {}
        for i, cell in enumerate(cells):
            for v in cell:
                cell_of[v] = i
        new_cells = []
        for cell in cells:
            if len(cell) == 1:
                new_cells.append(cell)
                continue
            groups: dict[tuple, list[int]] = {}
            for v in cell:
                sig = tuple(sorted(tuple(sorted(cell_of[u] for u in e if u != v)) for e in incidence[v]))
                groups.setdefault(sig, []).append(v)
            for sig in sorted(groups):
                new_cells.append(groups[sig])
        if len(new_cells) == len(cells):
            return new_cells
        cells = new_cells


def _orbit_of(v: int, perms: list[tuple[int, ...]]) -> set[int]:
    orbit = {v}
    frontier = [v]
    while frontier:
        u = frontier.pop()
        for p in perms:
            w = p[u]
            if w not in orbit:
                orbit.add(w)
                frontier.append(w)
    return orbit


def _canonical_labeling(H: Hypergraph) -> tuple[tuple, tuple[int, ...]]:
    """Individualization-refinement with automorphism pruning.

    Returns the minimal leaf certificate and the labeling that produces it.
    """
    inc = H.incidence
    first: dict = {}
    best: dict = {}
    autos: list[tuple[int, ...]] = []

    def certificate(cells):
        label = [0] * H.n
        for pos, cell in enumerate(cells):
            label[cell[0]] = pos
        cert = tuple(sorted(tuple(sorted(label[u] for u in e)) for e in H.edges))
        return cert, tuple(label)

    def automorphism(lab_a, lab_b):
        inv_b = [0] * H.n
        for v, p in enumerate(lab_b):
            inv_b[p] = v
        return tuple(inv_b[lab_a[v]] for v in range(H.n))

    def search(cells, path):
        target = next((i for i, c in enumerate(cells) if len(c) > 1), None)
        if target is None:
            cert, lab = certificate(cells)
            if not first:
                first.update(cert=cert, lab=lab, path=path)
                best.update(cert=cert, lab=lab)
                return None
            if cert == first["cert"]:
                autos.append(automorphism(first["lab"], lab))
                common = 0
                for a, b in zip(path, first["path"]):
                    if a != b:
                        break
                    common += 1
                return common
            if cert == best["cert"]:
                autos.append(automorphism(best["lab"], lab))
            elif cert < best["cert"]:
                best.update(cert=cert, lab=lab)
            return None
        explored: list[int] = []
        depth = len(path)
        for v in sorted(cells[target]):
            if explored:
                stab = [p for p in autos if all(p[u] == u for u in path)]
                if stab and any(v in _orbit_of(u, stab) for u in explored):
                    continue
            explored.append(v)
            rest = [u for u in cells[target] if u != v]
            child = cells[:target] + [[v], rest] + cells[target + 1 :]
            jump = search(_refine(inc, child), path + (v,))
            if jump is not None and jump < depth:
                return jump
        return None

    if H.n == 0:
        return (), ()
    search(_refine(inc, [list(range(H.n))]), ())
    return best["cert"], best["lab"]


def canonical_form(H: Hypergraph) -> tuple:
    """Complete isomorphism invariant: equal iff the hypergraphs are isomorphic."""
    cert, _ = _canonical_labeling(H)
    return (H.r, H.n, cert)


def canonical_relabel(H: Hypergraph) -> Hypergraph:
    _, lab = _canonical_labeling(H)
    return H.relabel(lab) if lab else H


def isomorphic(H1: Hypergraph, H2: Hypergraph) -> bool:
    if (H1.r, H1.n, H1.m) != (H2.r, H2.n, H2.m):
        return False
    if H1.degrees and sorted(H1.degrees) != sorted(H2.degrees):
        return False
    return canonical_form(H1) == canonical_form(H2)


# -- .hg text format ----------------------------------------------------------


def parse_hg(text: str, source: str = "<string>") -> Hypergraph:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise FormatError(f"{source}: missing header line 'r n m'")
    try:
        r, n, m = (int(t) for t in lines[0].split())
    except ValueError:
        raise FormatError(f"{source}: header must be three integers 'r n m', got {lines[0]!r}") from None
    body = lines[1:]
    if len(body) != m:
        raise FormatError(f"{source}: header announces {m} edges, found {len(body)}")
    edges = []
    for ln in body:
        try:
            e = tuple(int(t) for t in ln.split())
        except ValueError:
            raise FormatError(f"{source}: bad edge line {ln!r}") from None
        if list(e) != sorted(set(e)):
            raise FormatError(f"{source}: edge {ln!r} is not strictly increasing")
        edges.append(e)
    return validate(Hypergraph(r, n, edges))


def format_hg(H: Hypergraph, comment: str | None = None) -> str:
    out = []
    if comment:
        out.extend(f"# {c}" for c in comment.splitlines())
    out.append(f"{H.r} {H.n} {H.m}")
    out.extend(" ".join(map(str, e)) for e in H.edges)
    return "\n".join(out) + "\n"


def read_hg(path) -> Hypergraph:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise FormatError(f"cannot read {p}: {exc.strerror}") from None
    return parse_hg(text, str(p))


def write_hg(H: Hypergraph, path, comment: str | None = None) -> None:
    Path(path).write_text(format_hg(H, comment))
