"""Numeric and structural invariants of a fixed hypergraph or graph.

Matching number, chromatic number, the red/blue quantities ``p`` and ``q``
of 2-chromatic hypergraphs, universal vertices, the family obtained by
deleting weakly independent sets, expansions, and the graph quantities
``m`` and ``m'`` used by the expansion constructions.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

from hgx.errors import (
    ArityTooSmall,
    ChromaticTooSmall,
    NoCrosscut,
    NoEdges,
    NoProperColoring,
    NotTwoChromatic,
    UniformityMismatch,
)
from hgx.hypercore import Hypergraph, bits, canonical_form, delete_vertices, link, to_mask

INFINITY = math.inf


@dataclass(frozen=True)
class Coloring:
    """Vertex colors ``0..k-1``; color 0 plays the role of red."""

    colors: tuple[int, ...]
    k: int

    def is_proper(self, H: Hypergraph) -> bool:
        return all(len({self.colors[v] for v in e}) > 1 for e in H.edges)

    def is_strong(self, H: Hypergraph) -> bool:
        return all(sum(self.colors[v] == 0 for v in e) == 1 for e in H.edges)


@dataclass(frozen=True)
class CrosscutProfile:
    q: float | int
    crosscut: tuple[int, ...] = ()
    link_chromatics: tuple[int, ...] = field(default=())

    @property
    def finite(self) -> bool:
        return self.q != INFINITY


# -- matchings ----------------------------------------------------------------


def max_packing(masks, r: int, target: int | None = None) -> list[int]:
    """Indices of a maximum family of pairwise disjoint masks.

    Branches on a vertex of least degree: either it stays unmatched or one
    of its edges is taken.  With ``target`` the search stops as soon as a
    packing of that size is found.
    """
    masks = list(masks)
    best: list[int] = []
    chosen: list[int] = []

    def rec(idx: list[int]) -> bool:
        nonlocal best
        if len(chosen) > len(best):
            best = list(chosen)
            if target is not None and len(best) >= target:
                return True
        if not idx:
            return False
        union = 0
        for i in idx:
            union |= masks[i]
        if len(chosen) + min(len(idx), union.bit_count() // r) <= len(best):
            return False
        deg: dict[int, int] = {}
        for i in idx:
            for v in bits(masks[i]):
                deg[v] = deg.get(v, 0) + 1
        v = min(deg, key=lambda u: (deg[u], u))
        vbit = 1 << v
        for i in idx:
            if masks[i] & vbit:
                chosen.append(i)
                if rec([j for j in idx if not masks[j] & masks[i]]):
                    return True
                chosen.pop()
        return rec([j for j in idx if not masks[j] & vbit])

    rec(list(range(len(masks))))
    return best


def maximum_matching(H: Hypergraph) -> tuple[tuple[int, ...], ...]:
    return tuple(H.edges[i] for i in sorted(max_packing(H.masks, H.r)))


def matching_number(H: Hypergraph) -> int:
    """Largest number of pairwise disjoint edges."""
    return len(max_packing(H.masks, H.r))


def has_matching(H: Hypergraph, size: int) -> bool:
    if size <= 0:
        return True
    return len(max_packing(H.masks, H.r, target=size)) >= size


# -- colorings ----------------------------------------------------------------


def _coloring_order(H: Hypergraph):
    order = sorted(range(H.n), key=lambda v: (-H.degrees[v], v))
    pos = {v: i for i, v in enumerate(order)}
    closing: list[list[tuple[int, ...]]] = [[] for _ in range(H.n)]
    for e in H.edges:
        closing[max(pos[v] for v in e)].append(e)
    return order, closing


def proper_coloring(H: Hypergraph, k: int) -> Coloring | None:
    """A proper coloring with at most ``k`` colors, or ``None``."""
    if H.m and H.r == 1:
        return None
    if H.n == 0:
        return Coloring((), 0)
    if k < 1:
        return None
    order, closing = _coloring_order(H)
    colors = [-1] * H.n

    def rec(j: int, used: int) -> bool:
        if j == H.n:
            return True
        v = order[j]
        for c in range(min(used + 1, k)):
            colors[v] = c
            if all(any(colors[u] != c for u in e) for e in closing[j]):
                if rec(j + 1, max(used, c + 1)):
                    return True
        colors[v] = -1
        return False

    if rec(0, 0):
        return Coloring(tuple(colors), max(colors) + 1)
    return None


def chromatic_coloring(H: Hypergraph) -> Coloring:
    if H.m and H.r == 1:
        raise NoProperColoring("every edge of a 1-uniform hypergraph is monochromatic")
    if not H.m:
        return Coloring((0,) * H.n, 1 if H.n else 0)
    k = 2
    while True:
        col = proper_coloring(H, k)
        if col is not None:
            return col
        k += 1


def chromatic_number(H: Hypergraph) -> int:
    """Least number of colors with no monochromatic edge (1 when edgeless)."""
    if not H.m:
        return 1
    return chromatic_coloring(H).k


def _non_isolated(H: Hypergraph) -> list[int]:
    return [v for v in range(H.n) if H.degrees[v]]


def minimum_red_set(F: Hypergraph) -> tuple[int, ...]:
    """Smallest red class of a proper red-blue coloring (least lexicographic)."""
    if not F.m:
        raise NoEdges("p is defined for hypergraphs with at least one edge")
    masks = F.masks
    for size in range(1, F.n + 1):
        for red in itertools.combinations(_non_isolated(F), size):
            rm = to_mask(red)
            if all(e & rm and e & ~rm for e in masks):
                return red
    raise NotTwoChromatic("hypergraph has no proper red-blue coloring")


def p_value(F: Hypergraph) -> int:
    return len(minimum_red_set(F))


def minimum_crosscuts(F: Hypergraph) -> list[tuple[int, ...]]:
    """All minimum-size red sets meeting every edge in exactly one vertex.

    Returned in lexicographic order; empty when no crosscut exists.
    """
    if not F.m:
        raise NoEdges("q is defined for hypergraphs with at least one edge")
    masks = F.masks
    cand = _non_isolated(F)
    for size in range(1, len(cand) + 1):
        found = []
        for red in itertools.combinations(cand, size):
            rm = to_mask(red)
            if all((e & rm).bit_count() == 1 for e in masks):
                found.append(red)
        if found:
            return found
    return []


def _profile(F: Hypergraph, crosscut: tuple[int, ...]) -> CrosscutProfile:
    if F.r >= 3:
        ells = tuple(sorted((chromatic_number(link(F, v)) for v in crosscut), reverse=True))
    else:
        ells = ()
    return CrosscutProfile(len(crosscut), crosscut, ells)


def q_profile(F: Hypergraph) -> CrosscutProfile:
    cuts = minimum_crosscuts(F)
    if not cuts:
        return CrosscutProfile(INFINITY)
    return _profile(F, cuts[0])


def q_value(F: Hypergraph) -> int | float:
    """Minimum crosscut size, or ``math.inf`` when no strong coloring exists."""
    return q_profile(F).q


def crosscut_link_chromatics(F: Hypergraph) -> CrosscutProfile:
    """Chromatic numbers of the link graphs of a minimum crosscut, non-increasing."""
    prof = q_profile(F)
    if not prof.finite:
        raise NoCrosscut("hypergraph has no strong red-blue coloring")
    return prof


def all_crosscut_profiles(F: Hypergraph) -> list[CrosscutProfile]:
    return [_profile(F, c) for c in minimum_crosscuts(F)]


def universal_vertex(F: Hypergraph) -> int | None:
    """Least vertex lying in every edge, if any."""
    if not F.m:
        raise NoEdges("universal vertex needs at least one edge")
    common = (1 << F.n) - 1
    for e in F.masks:
        common &= e
    if not common:
        return None
    return (common & -common).bit_length() - 1


# -- derived family -----------------------------------------------------------


def derived_family_report(F: Hypergraph) -> tuple[list[Hypergraph], int]:
    """Members obtained by deleting weakly independent sets, plus the drop count.

    Members are deduplicated up to isomorphism; edgeless results are dropped
    and counted (per isomorphism class).
    """
    masks = F.masks
    seen = set()
    members: list[Hypergraph] = []
    dropped = set()
    for size in range(F.n + 1):
        for S in itertools.combinations(range(F.n), size):
            sm = to_mask(S)
            if any(e & sm == e for e in masks):
                continue
            G = delete_vertices(F, S)
            key = canonical_form(G)
            if not G.m:
                dropped.add(key)
                continue
            if key not in seen:
                seen.add(key)
                members.append(G)
    return members, len(dropped)


def derived_family(F: Hypergraph) -> list[Hypergraph]:
    return derived_family_report(F)[0]


# -- graph expansions and the graph quantities m, m' --------------------------


def _require_graph(G: Hypergraph) -> None:
    if G.r != 2:
        raise UniformityMismatch(f"expected a graph (r=2), got r={G.r}")


def expansion(G: Hypergraph, r: int) -> Hypergraph:
    """Pad every edge of ``G`` with ``r-2`` private new vertices.

    Core vertices keep their labels; new vertices follow in edge order.
    """
    _require_graph(G)
    if r < 2:
        raise ArityTooSmall(f"expansion needs r >= 2, got r={r}")
    pad = r - 2
    edges = []
    for j, (a, b) in enumerate(G.edges):
        extra = range(G.n + j * pad, G.n + (j + 1) * pad)
        edges.append((a, b, *extra))
    return Hypergraph(r, G.n + pad * G.m, edges)


def _independent(G: Hypergraph, mask: int) -> bool:
    return all(e & mask != e for e in G.masks)


def _subsets_by_size(n: int):
    for size in range(n + 1):
        for S in itertools.combinations(range(n), size):
            yield S


def m_value(G: Hypergraph) -> tuple[int, tuple[int, ...]]:
    """Min over independent ``W`` of ``|W|`` plus the edges missing ``W``."""
    _require_graph(G)
    if not G.m:
        raise NoEdges("m(G) needs at least one edge")
    best = None
    for W in _subsets_by_size(G.n):
        wm = to_mask(W)
        if not _independent(G, wm):
            continue
        val = len(W) + sum(1 for e in G.masks if not e & wm)
        if best is None or (val, W) < best:
            best = (val, W)
    return best


def _min_monochromatic(G: Hypergraph, keep: list[int], colors: int, bound: float):
    """Fewest monochromatic edges over ``colors``-colorings of ``G[keep]``.

    Returns ``(cost, coloring dict)`` for the first optimum found below
    ``bound``, or ``None`` if nothing beats ``bound``.
    """
    keep_set = set(keep)
    adj = {v: [] for v in keep}
    for a, b in G.edges:
        if a in keep_set and b in keep_set:
            adj[a].append(b)
            adj[b].append(a)
    order = sorted(keep, key=lambda v: (-len(adj[v]), v))
    col: dict[int, int] = {}
    best = [bound, None]

    def rec(j: int, used: int, cost: int) -> None:
        if cost >= best[0]:
            return
        if j == len(order):
            best[0] = cost
            best[1] = dict(col)
            return
        v = order[j]
        for c in range(min(used + 1, colors)):
            extra = sum(1 for u in adj[v] if col.get(u) == c)
            col[v] = c
            rec(j + 1, max(used, c + 1), cost + extra)
            del col[v]

    rec(0, 0, 0)
    if best[1] is None:
        return None
    return best[0], best[1]


def m_prime_value(G: Hypergraph) -> tuple[int, tuple[tuple[int, ...], tuple[tuple[int, int], ...]]]:
    """Fewest edges ``Z`` such that deleting an independent ``U`` and ``Z``
    lowers the chromatic number by two.  Returns ``(|Z|, (U, Z))``."""
    _require_graph(G)
    k = chromatic_number(G)
    if k < 3:
        raise ChromaticTooSmall(f"m'(G) needs chromatic number >= 3, got {k}")
    best_val = math.inf
    witness = None
    for U in _subsets_by_size(G.n):
        um = to_mask(U)
        if not _independent(G, um):
            continue
        keep = [v for v in range(G.n) if not um >> v & 1]
        found = _min_monochromatic(G, keep, k - 2, best_val)
        if found is None:
            continue
        cost, col = found
        Z = tuple(e for e in G.edges if e[0] in col and e[1] in col and col[e[0]] == col[e[1]])
        best_val = cost
        witness = (U, Z)
        if best_val == 0:
            break
    return int(best_val), witness
