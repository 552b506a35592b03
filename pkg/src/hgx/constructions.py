"""Generators for the extremal and lower-bound hypergraphs.

Layout conventions: special vertex classes come first in label order
(``A`` then ``B`` then ``C`` ...); within a multipartite graph parts are
near-equal with the larger parts first.  Every generator has a companion
closed-form edge count (``count_*``) so sizes can be reported without
materializing the hypergraph.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb

from hgx.errors import ArityExceedsVertices, BadParams, UniformityMismatch
from hgx.hypercore import Hypergraph


def binom(a: int, b: int) -> int:
    if b < 0 or a < 0 or b > a:
        return 0
    return comb(a, b)


def balanced_parts(n: int, k: int) -> list[int]:
    """Sizes of ``k`` near-equal parts of ``n``, larger parts first."""
    if k <= 0:
        return []
    q, rem = divmod(n, k)
    return [q + 1] * rem + [q] * (k - rem)


def coarsen(parts: list[int]) -> list[int]:
    """Merge the two smallest (last) parts of a larger-first partition."""
    if len(parts) < 2:
        return list(parts)
    return parts[:-2] + [parts[-2] + parts[-1]]


def elementary_symmetric(values: list[int], r: int) -> int:
    """``e_r(values)``: number of ``r``-sets with one vertex in each of ``r`` parts."""
    e = [1] + [0] * r
    for x in values:
        for j in range(r, 0, -1):
            e[j] += e[j - 1] * x
    return e[r] if r >= 0 else 0


def _blocks(sizes: list[int], start: int = 0) -> list[range]:
    out = []
    for s in sizes:
        out.append(range(start, start + s))
        start += s
    return out


def _multipartite_sets(blocks: list[range], r: int):
    """All ``r``-sets meeting each block in at most one vertex."""
    for chosen in itertools.combinations(range(len(blocks)), r):
        yield from itertools.product(*(blocks[i] for i in chosen))


# -- graphs -------------------------------------------------------------------


def complete_multipartite_uniform(parts: list[int], r: int) -> Hypergraph:
    """All ``r``-sets with at most one vertex per part."""
    if r < 1:
        raise BadParams(f"r must be >= 1, got {r}")
    if any(p < 0 for p in parts):
        raise BadParams(f"part sizes must be non-negative, got {parts}")
    blocks = _blocks(list(parts))
    return Hypergraph(r, sum(parts), _multipartite_sets(blocks, r))


def _turan_parts(n: int, ell: int) -> list[int]:
    if n < 0 or ell < 1:
        raise BadParams(f"turan_graph needs n >= 0 and ell >= 1, got n={n}, ell={ell}")
    return balanced_parts(n, ell)


def turan_graph(n: int, ell: int) -> Hypergraph:
    """Balanced complete ``ell``-partite graph on ``n`` vertices."""
    return complete_multipartite_uniform(_turan_parts(n, ell), 2)


def count_turan_graph(n: int, ell: int) -> int:
    return elementary_symmetric(_turan_parts(n, ell), 2)


def _g_nls_parts(n: int, ell: int, s: int) -> list[int]:
    if ell < 2 or not 0 <= s < n:
        raise BadParams(f"G(n,l,s) needs l >= 2 and 0 <= s < n, got n={n}, l={ell}, s={s}")
    return balanced_parts(s, ell - 1) + [n - s]


def G_nls(n: int, ell: int, s: int) -> Hypergraph:
    """Complete ``ell``-partite graph with one part of order ``n-s``.

    The ``ell-1`` small parts share the first ``s`` labels; empty small
    parts are allowed and simply contribute nothing.
    """
    return complete_multipartite_uniform(_g_nls_parts(n, ell, s), 2)


def count_G_nls(n: int, ell: int, s: int) -> int:
    return elementary_symmetric(_g_nls_parts(n, ell, s), 2)


# -- matching-type constructions ---------------------------------------------


def _check_arity(n: int, r: int) -> None:
    if r < 1:
        raise BadParams(f"r must be >= 1, got {r}")
    if r > n:
        raise ArityExceedsVertices(f"r={r} exceeds the number of vertices n={n}")


def _anrs_params(n: int, r: int, s: int) -> None:
    _check_arity(n, r)
    if not 0 <= s <= n:
        raise BadParams(f"A(n,r,s) needs 0 <= s <= n, got s={s}, n={n}")


def A_nrs(n: int, r: int, s: int) -> Hypergraph:
    """All ``r``-sets meeting the fixed set ``{0..s-1}``."""
    _anrs_params(n, r, s)
    return Hypergraph(r, n, (e for e in itertools.combinations(range(n), r) if e[0] < s))


def count_A_nrs(n: int, r: int, s: int) -> int:
    _anrs_params(n, r, s)
    return binom(n, r) - binom(n - s, r)


def _exactly_one(n: int, r: int, a: int):
    for x in range(a):
        for rest in itertools.combinations(range(a, n), r - 1):
            yield (x, *rest)


def _star_params(n: int, r: int, a: int) -> None:
    if not 0 <= a <= n:
        raise BadParams(f"crosscut_star needs 0 <= a <= n, got a={a}, n={n}")
    if r < 1 or r > n - a + 1:
        raise ArityExceedsVertices(f"r={r} needs r <= n-a+1 = {n - a + 1}")


def crosscut_star(n: int, r: int, a: int) -> Hypergraph:
    """All ``r``-sets with exactly one vertex in ``A = {0..a-1}``."""
    _star_params(n, r, a)
    return Hypergraph(r, n, _exactly_one(n, r, a))


def count_crosscut_star(n: int, r: int, a: int) -> int:
    _star_params(n, r, a)
    return a * binom(n - a, r - 1)


def core_cover(H0: Hypergraph, n: int, r: int) -> Hypergraph:
    """``H0`` on the first ``s`` labels plus every ``r``-set meeting them in
    between 1 and ``r-1`` vertices."""
    if H0.r != r:
        raise UniformityMismatch(f"core is {H0.r}-uniform, expected r={r}")
    s = H0.n
    if s > n:
        raise BadParams(f"core has {s} vertices but n={n}")
    cross = (e for e in itertools.combinations(range(n), r) if e[0] < s and e[-1] >= s)
    return Hypergraph(r, n, list(H0.edges) + list(cross))


def count_core_cover(core_edges: int, s: int, n: int, r: int) -> int:
    return core_edges + sum(binom(s, i) * binom(n - s, r - i) for i in range(1, min(s, r - 1) + 1))


def _hi_params(n: int, s: int, i: int, ell: int) -> None:
    if not 1 <= i <= s or ell < 2 or n <= s:
        raise BadParams(f"H_i needs 1 <= i <= s, ell >= 2, n > s; got n={n}, s={s}, i={i}, ell={ell}")


def H_i_construction(n: int, s: int, i: int, ell: int) -> Hypergraph:
    """3-graph with ``A1`` (``i-1`` vertices) joined to all pairs of ``B`` and
    ``A2`` (``s-i+1`` vertices) joined to the edges of ``T(n-s, ell-1)`` on ``B``."""
    _hi_params(n, s, i, ell)
    b0 = s
    edges = []
    for a in range(i - 1):
        edges.extend((a, *p) for p in itertools.combinations(range(b0, n), 2))
    T = turan_graph(n - s, ell - 1)
    for a in range(i - 1, s):
        edges.extend((a, x + b0, y + b0) for x, y in T.edges)
    return Hypergraph(3, n, edges)


def count_H_i(n: int, s: int, i: int, ell: int) -> int:
    _hi_params(n, s, i, ell)
    return (i - 1) * binom(n - s, 2) + (s - i + 1) * count_turan_graph(n - s, ell - 1)


# -- expansion constructions --------------------------------------------------


def _g1_params(n: int, r: int, m: int) -> None:
    if m < 1 or r < 2 or n < m - 1 + r - 1:
        raise BadParams(f"G1 needs m >= 1, r >= 2 and n >= m+r-2; got n={n}, r={r}, m={m}")


def G1(n: int, r: int, m: int) -> Hypergraph:
    """``A`` of ``m-1`` vertices; edges take one vertex of ``A`` and ``r-1`` of the rest."""
    _g1_params(n, r, m)
    return Hypergraph(r, n, _exactly_one(n, r, m - 1))


def count_G1(n: int, r: int, m: int) -> int:
    _g1_params(n, r, m)
    return (m - 1) * binom(n - m + 1, r - 1)


def _attach(apex: range, link_edges, offset: int):
    for a in apex:
        for e in link_edges:
            yield (a, *(offset + v for v in e))


def _two_level(D: int, k: int, r: int) -> tuple[list[int], list[int]]:
    """Partitions of ``D`` for the (k-1)-partite graph and its (k-2)-coarsening."""
    fine = balanced_parts(D, k - 1)
    return coarsen(fine), fine


def _check_expansion_params(r: int, k: int) -> None:
    if k < 3:
        raise BadParams(f"chromatic number k must be >= 3, got {k}")
    if r < 3:
        raise BadParams(f"r must be >= 3, got {r}")


def _g1p_params(n, r, k, w, x, y, z) -> int:
    _check_expansion_params(r, k)
    if min(w, x, y, z) < 0 or w + z < 1:
        raise BadParams("G1' needs w, x, y, z >= 0 and w + z >= 1")
    d = n - (w + z - 1) - x - y
    if d < 1:
        raise BadParams(f"n={n} leaves no vertices for D")
    return d


def G1prime(n: int, r: int, k: int, w: int, x: int, y: int, z: int) -> Hypergraph:
    """Classes A (w+z-1), B (x), C (y), D (rest): B-vertices take any
    (r-1)-set of D, A-vertices an edge of the (k-2)-partite graph on D,
    C-vertices an edge of the (k-1)-partite graph on D."""
    d = _g1p_params(n, r, k, w, x, y, z)
    a, b, c = w + z - 1, x, y
    off = a + b + c
    coarse, fine = _two_level(d, k, r)
    g0 = complete_multipartite_uniform(coarse, r - 1)
    g0p = complete_multipartite_uniform(fine, r - 1)
    full = Hypergraph(r - 1, d, itertools.combinations(range(d), r - 1))
    A, B, C = range(0, a), range(a, a + b), range(a + b, off)
    edges = [*_attach(B, full.edges, off), *_attach(A, g0.edges, off), *_attach(C, g0p.edges, off)]
    return Hypergraph(r, n, edges)


def count_G1prime(n: int, r: int, k: int, w: int, x: int, y: int, z: int) -> int:
    d = _g1p_params(n, r, k, w, x, y, z)
    coarse, fine = _two_level(d, k, r)
    return (
        x * binom(d, r - 1)
        + (w + z - 1) * elementary_symmetric(coarse, r - 1)
        + y * elementary_symmetric(fine, r - 1)
    )


def _g2_params(n, r, s, mprime, k) -> None:
    _check_expansion_params(r, k)
    if mprime < 1 or s < mprime - 1 or n <= s:
        raise BadParams(f"G2 needs m' >= 1, s >= m'-1, n > s; got n={n}, s={s}, m'={mprime}")


def G2(n: int, r: int, s: int, mprime: int, k: int) -> Hypergraph:
    """``A`` (m'-1) takes any (r-1)-set of ``C``; ``B`` (s-m'+1) takes an edge
    of the complete (k-2)-partite (r-1)-graph on ``C`` (n-s vertices)."""
    _g2_params(n, r, s, mprime, k)
    a = mprime - 1
    d = n - s
    g0 = complete_multipartite_uniform(balanced_parts(d, k - 2), r - 1)
    full = itertools.combinations(range(d), r - 1)
    edges = [*_attach(range(a), list(full), s), *_attach(range(a, s), g0.edges, s)]
    return Hypergraph(r, n, edges)


def count_G2(n: int, r: int, s: int, mprime: int, k: int) -> int:
    _g2_params(n, r, s, mprime, k)
    d = n - s
    return (mprime - 1) * binom(d, r - 1) + (s - mprime + 1) * elementary_symmetric(
        balanced_parts(d, k - 2), r - 1
    )


def _g2p_params(n, r, s, k, x, y) -> None:
    _check_expansion_params(r, k)
    if x < 0 or y < 1 or s < x + y - 1 or n <= s:
        raise BadParams(f"G2' needs x >= 0, y >= 1, s >= x+y-1, n > s; got s={s}, x={x}, y={y}, n={n}")


def G2prime(n: int, r: int, s: int, k: int, x: int, y: int) -> Hypergraph:
    """Classes A (x), B (y-1), C (s-x-y+1), D (n-s): A takes any (r-1)-set of
    D, B an edge of the (k-1)-partite graph, C an edge of the (k-2)-partite one."""
    _g2p_params(n, r, s, k, x, y)
    a, b = x, y - 1
    d = n - s
    coarse, fine = _two_level(d, k, r)
    g0 = complete_multipartite_uniform(coarse, r - 1)
    g0p = complete_multipartite_uniform(fine, r - 1)
    full = list(itertools.combinations(range(d), r - 1))
    A, B, C = range(0, a), range(a, a + b), range(a + b, s)
    edges = [*_attach(A, full, s), *_attach(B, g0p.edges, s), *_attach(C, g0.edges, s)]
    return Hypergraph(r, n, edges)


def count_G2prime(n: int, r: int, s: int, k: int, x: int, y: int) -> int:
    _g2p_params(n, r, s, k, x, y)
    d = n - s
    coarse, fine = _two_level(d, k, r)
    return (
        x * binom(d, r - 1)
        + (y - 1) * elementary_symmetric(fine, r - 1)
        + (s - x - y + 1) * elementary_symmetric(coarse, r - 1)
    )


# -- named dispatch -----------------------------------------------------------


_BUILDERS = {
    "turan_graph": (turan_graph, count_turan_graph, ("n", "ell")),
    "G_nls": (G_nls, count_G_nls, ("n", "ell", "s")),
    "A_nrs": (A_nrs, count_A_nrs, ("n", "r", "s")),
    "crosscut_star": (crosscut_star, count_crosscut_star, ("n", "r", "a")),
    "H_i": (H_i_construction, count_H_i, ("n", "s", "i", "ell")),
    "G1": (G1, count_G1, ("n", "r", "m")),
    "G1prime": (G1prime, count_G1prime, ("n", "r", "k", "w", "x", "y", "z")),
    "G2": (G2, count_G2, ("n", "r", "s", "mprime", "k")),
    "G2prime": (G2prime, count_G2prime, ("n", "r", "s", "k", "x", "y")),
}

NAMES = tuple(_BUILDERS) + ("core_cover", "complete_multipartite_uniform")

ALIASES = {
    "anrs": "A_nrs",
    "gnls": "G_nls",
    "turan": "turan_graph",
    "hi": "H_i",
    "g1": "G1",
    "g1prime": "G1prime",
    "g2": "G2",
    "g2prime": "G2prime",
    "crosscut-star": "crosscut_star",
    "core-cover": "core_cover",
    "multipartite": "complete_multipartite_uniform",
}


@dataclass(frozen=True)
class ConstructionSpec:
    """A named construction with its integer parameters.

    ``core`` is only used by ``core_cover``; ``parts`` only by
    ``complete_multipartite_uniform``.
    """

    name: str
    params: dict = field(default_factory=dict)
    core: Hypergraph | None = None
    parts: tuple[int, ...] = ()

    def __post_init__(self):
        name = ALIASES.get(self.name.lower(), self.name) if self.name not in NAMES else self.name
        if name not in NAMES:
            raise BadParams(f"unknown construction {self.name!r}; choose from {', '.join(NAMES)}")
        object.__setattr__(self, "name", name)

    def _args(self, names):
        missing = [p for p in names if p not in self.params]
        if missing:
            raise BadParams(f"{self.name} needs parameters {', '.join(missing)}")
        return [int(self.params[p]) for p in names]

    def build(self) -> Hypergraph:
        if self.name == "core_cover":
            if self.core is None:
                raise BadParams("core_cover needs a core hypergraph")
            n, r = self._args(("n", "r"))
            return core_cover(self.core, n, r)
        if self.name == "complete_multipartite_uniform":
            (r,) = self._args(("r",))
            return complete_multipartite_uniform(list(self.parts), r)
        fn, _, names = _BUILDERS[self.name]
        return fn(*self._args(names))

    def edge_count(self) -> int:
        if self.name == "core_cover":
            if self.core is None:
                raise BadParams("core_cover needs a core hypergraph")
            n, r = self._args(("n", "r"))
            if self.core.r != r:
                raise UniformityMismatch(f"core is {self.core.r}-uniform, expected r={r}")
            return count_core_cover(self.core.m, self.core.n, n, r)
        if self.name == "complete_multipartite_uniform":
            (r,) = self._args(("r",))
            return elementary_symmetric(list(self.parts), r)
        _, count, names = _BUILDERS[self.name]
        return count(*self._args(names))

