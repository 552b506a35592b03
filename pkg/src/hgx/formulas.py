"""Closed-form bounds, evaluated exactly.

Kept independent of :mod:`hgx.constructions` so edge counts of the
generated hypergraphs can be cross-checked against these values.  Rational
quantities are :class:`fractions.Fraction`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from hgx.errors import BadParams, ChromaticTooSmall, DivisionByZero
from hgx.hypercore import Hypergraph, to_mask
from hgx.invariants import chromatic_number

LOWER_BOUND = "lower_bound"
EXACT_CLAIMED = "exact_claimed"
MAIN_TERM = "asymptotic_main_term"


def binom(a: int, b: int) -> int:
    """Binomial coefficient, zero outside ``0 <= b <= a``."""
    if b < 0 or a < 0 or b > a:
        return 0
    return comb(a, b)


@dataclass(frozen=True)
class FormulaValue:
    theorem_id: str
    params: dict = field(default_factory=dict)
    value: int | Fraction = 0
    lower_or_exact: str = EXACT_CLAIMED

    def text(self) -> str:
        return format_exact(self.value)


def format_exact(value) -> str:
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return str(value.numerator)
        return f"{value.numerator}/{value.denominator}"
    return str(value)


def emc_formula(n: int, r: int, s: int) -> int:
    """``sum_{i=1}^{s} C(s,i) C(n-s,r-i)``: edges of an r-graph meeting a fixed s-set."""
    return sum(binom(s, i) * binom(n - s, r - i) for i in range(1, s + 1))


def emc_threshold(r: int, s: int) -> int:
    """Smallest ``n`` from which the matching formula is known to be exact."""
    return (2 * s + 1) * r - s


def chi3_formula(n: int, r: int, s: int, ex_s_family: int) -> int:
    """``ex_r(s, family) + sum_{i=1}^{min(s, r-1)} C(s,i) C(n-s,r-i)``."""
    if ex_s_family < 0:
        raise BadParams("ex_r(s, family) must be non-negative")
    t = min(s, r - 1)
    return ex_s_family + sum(binom(s, i) * binom(n - s, r - i) for i in range(1, t + 1))


def omega(s: int, matching_number: int) -> int:
    return max(0, min(s, matching_number - 1))


def two_chromatic_bounds(n: int, r: int, s: int, matching_number: int) -> tuple[int, int]:
    """Lower and upper bounds for ``ex_r(n, {F, M_{s+1}})`` when ``chi(F) = 2``."""
    w = omega(s, matching_number)
    return emc_formula(n, r, w), emc_formula(n, r, s)


def graph_chi3_formula(n: int, s: int, ex_s_family: int) -> int:
    """Graph case: ``ex(s, family) + s(n-s)``."""
    return ex_s_family + s * (n - s)


def g_nls_edge_count(n: int, ell: int, s: int) -> int:
    """``|E(G(n, ell, s))|`` computed from part sizes."""
    q, rem = divmod(s, ell - 1)
    parts = [q + 1] * rem + [q] * (ell - 1 - rem) + [n - s]
    total = sum(parts)
    return (total * total - sum(p * p for p in parts)) // 2


def bipartite_main_term(n: int, r: int, p: int) -> int:
    """``(p-1) C(n, r-1)``, the leading term when ``p(G) <= s``."""
    return (p - 1) * binom(n, r - 1)


def k_lt_r_main_term(n: int, r: int, s: int, m: int) -> int:
    """``min{m(G)-1, s} C(n, r-1)``."""
    return min(m - 1, s) * binom(n, r - 1)


def _need_k(k: int) -> None:
    if k <= 2:
        raise DivisionByZero(f"chromatic number k={k} makes a denominator k-2 vanish")


def _class_weight(n: int, r: int, parts: int) -> Fraction:
    """``C(parts, r-1) (n/parts)^{r-1}``."""
    return binom(parts, r - 1) * Fraction(n, parts) ** (r - 1)


def f_WXYZ(n: int, r: int, k: int, x: int, y: int, w: int, z: int) -> Fraction:
    _need_k(k)
    return (
        x * binom(n, r - 1)
        + y * _class_weight(n, r, k - 1)
        + (w + z - 1) * _class_weight(n, r, k - 2)
    )


def f_UXY(n: int, r: int, k: int, s: int, x: int, y: int) -> Fraction:
    _need_k(k)
    return (
        x * binom(n, r - 1)
        + (y - 1) * _class_weight(n, r, k - 1)
        + (s - x - y + 1) * _class_weight(n, r, k - 2)
    )


def g2_main_term(n: int, r: int, k: int, s: int, mprime: int) -> Fraction:
    """Main term ``(m'-1) C(n,r-1) + (s-m'+1) C(k-2,r-1) (n/(k-2))^{r-1}``."""
    _need_k(k)
    return (mprime - 1) * binom(n, r - 1) + (s - mprime + 1) * _class_weight(n, r, k - 2)


# -- h(G) and h'(G): exhaustive minimization ---------------------------------


def _chromatic(n: int, edges: list[tuple[int, int]]) -> int:
    return chromatic_number(Hypergraph(2, n, edges))


def _admissible_splits(G: Hypergraph):
    """Yield ``(W, X, Y, Z)`` with W independent, X/Y/Z a split of the edges
    missing W, ``chi(G-W-X) = k-1`` and ``chi(G-W-X-Y) = k-2``."""
    k = _chromatic(G.n, list(G.edges))
    if k < 3:
        raise ChromaticTooSmall(f"needs chromatic number >= 3, got {k}")
    for size in range(G.n + 1):
        for W in itertools.combinations(range(G.n), size):
            wm = to_mask(W)
            if any(e & wm == e for e in G.masks):
                continue
            rest = [e for e in G.edges if not (1 << e[0] | 1 << e[1]) & wm]
            for labels in itertools.product(range(3), repeat=len(rest)):
                X = [e for e, t in zip(rest, labels) if t == 0]
                Y = [e for e, t in zip(rest, labels) if t == 1]
                Z = [e for e, t in zip(rest, labels) if t == 2]
                # chromatic numbers of G-W-X and G-W-X-Y; W's vertices are removed
                after_x = Y + Z
                if _chromatic(G.n - len(W), _compress(after_x, W, G.n)) != k - 1:
                    continue
                if _chromatic(G.n - len(W), _compress(Z, W, G.n)) != k - 2:
                    continue
                yield k, W, tuple(X), tuple(Y), tuple(Z)


def _compress(edges, removed, n):
    gone = set(removed)
    new = {}
    for v in range(n):
        if v not in gone:
            new[v] = len(new)
    return [(new[a], new[b]) for a, b in edges]


def h_value(G: Hypergraph, r: int, n: int):
    """Minimum of ``f(W,X,Y,Z)`` over admissible splits, with the witness."""
    best = None
    for k, W, X, Y, Z in _admissible_splits(G):
        val = f_WXYZ(n, r, k, len(X), len(Y), len(W), len(Z))
        if best is None or val < best[0]:
            best = (val, (W, X, Y, Z))
    if best is None:  # pragma: no cover - W = a color class always qualifies
        raise BadParams("no admissible split found")
    return best


def h_prime_value(G: Hypergraph, r: int, n: int, s: int):
    """Minimum of ``f(U,X,Y)`` over admissible splits with ``s >= |X|+|Y|-1``."""
    best = None
    for k, U, X, Y, _ in _admissible_splits(G):
        if s < len(X) + len(Y) - 1:
            continue
        val = f_UXY(n, r, k, s, len(X), len(Y))
        if best is None or val < best[0]:
            best = (val, (U, X, Y))
    if best is None:
        raise BadParams(f"no admissible split satisfies s >= |X|+|Y|-1 for s={s}")
    return best


# -- registry for the CLI -----------------------------------------------------

FORMULAS = {
    "emc": (emc_formula, ("n", "r", "s"), EXACT_CLAIMED),
    "chi3": (chi3_formula, ("n", "r", "s", "ex"), EXACT_CLAIMED),
    "omega": (lambda n, r, s, M: emc_formula(n, r, omega(s, M)), ("n", "r", "s", "M"), LOWER_BOUND),
    "f_wxyz": (f_WXYZ, ("n", "r", "k", "x", "y", "w", "z"), MAIN_TERM),
    "f_uxy": (f_UXY, ("n", "r", "k", "s", "x", "y"), MAIN_TERM),
    "g2_main": (g2_main_term, ("n", "r", "k", "s", "mprime"), MAIN_TERM),
    "chi3_graph": (graph_chi3_formula, ("n", "s", "ex"), EXACT_CLAIMED),
    "g_nls": (g_nls_edge_count, ("n", "ell", "s"), EXACT_CLAIMED),
    "bipartite": (bipartite_main_term, ("n", "r", "p"), MAIN_TERM),
    "k_lt_r": (k_lt_r_main_term, ("n", "r", "s", "m"), MAIN_TERM),
}


def evaluate(theorem_id: str, params: dict) -> FormulaValue:
    if theorem_id not in FORMULAS:
        raise BadParams(f"unknown formula {theorem_id!r}; choose from {', '.join(FORMULAS)}")
    fn, names, kind = FORMULAS[theorem_id]
    missing = [p for p in names if p not in params]
    if missing:
        raise BadParams(f"{theorem_id} needs parameters {', '.join(missing)}")
    args = [int(params[p]) for p in names]
    return FormulaValue(theorem_id, {p: int(params[p]) for p in names}, fn(*args), kind)
