from fractions import Fraction
from math import comb

import pytest

from hgx.constructions import G_nls, core_cover
from hgx.errors import BadParams, ChromaticTooSmall, DivisionByZero
from hgx.formulas import (
    g_nls_edge_count,
    chi3_formula,
    g2_main_term,
    emc_formula,
    emc_threshold,
    evaluate,
    f_UXY,
    f_WXYZ,
    format_exact,
    graph_chi3_formula,
    h_prime_value,
    h_value,
    omega,
    two_chromatic_bounds,
)
from hgx.hypercore import Hypergraph

from samples import complete, cycle


class TestMatchingFormula:
    def test_examples(self):
        assert emc_formula(8, 3, 1) == 21
        assert emc_formula(8, 2, 2) == 13
        assert emc_formula(9, 4, 0) == 0

    def test_inclusion_exclusion(self):
        for n in range(13):
            for r in range(13):
                for s in range(n + 1):
                    assert emc_formula(n, r, s) == comb(n, r) - comb(n - s, r)

    def test_graph_case(self):
        for n in range(2, 13):
            for s in range(n + 1):
                assert emc_formula(n, 2, s) == s * (n - s) + comb(s, 2)

    def test_threshold(self):
        assert emc_threshold(2, 1) == 5
        assert emc_threshold(3, 2) == 13


class TestChi3:
    def test_examples(self):
        assert chi3_formula(10, 2, 2, 0) == 16 == G_nls(10, 2, 2).m
        assert chi3_formula(10, 3, 0, 5) == 5
        assert chi3_formula(8, 3, 2, 0) == 36

    def test_matches_core_cover(self):
        for n in range(4, 12):
            for s in range(0, 4):
                for core_m in (0, 1):
                    core = Hypergraph(3, s, [(0, 1, 2)] if core_m and s >= 3 else [])
                    assert chi3_formula(n, 3, s, core.m) == core_cover(core, n, 3).m

    def test_rejects_negative(self):
        with pytest.raises(BadParams):
            chi3_formula(8, 3, 2, -1)

    def test_graph_specialisation(self):
        for n in range(5, 12):
            assert graph_chi3_formula(n, 2, 0) == chi3_formula(n, 2, 2, 0) == 2 * (n - 2)
            assert g_nls_edge_count(n, 3, 2) == G_nls(n, 3, 2).m


class TestTwoChromatic:
    def test_omega(self):
        assert omega(3, 1) == 0
        assert omega(3, 2) == 1
        assert omega(1, 5) == 1

    def test_bounds(self):
        assert two_chromatic_bounds(9, 3, 2, 2) == (emc_formula(9, 3, 1), emc_formula(9, 3, 2))
        assert two_chromatic_bounds(9, 3, 2, 1) == (0, emc_formula(9, 3, 2))


class TestRationalFormulas:
    def test_f_wxyz(self):
        assert f_WXYZ(10, 3, 5, 1, 0, 1, 0) == comb(10, 2)
        assert f_WXYZ(9, 3, 4, 0, 1, 1, 1) == Fraction(189, 4)
        assert f_WXYZ(9, 3, 4, 0, 0, 1, 0) == 0
        with pytest.raises(DivisionByZero):
            f_WXYZ(9, 3, 2, 0, 1, 1, 1)

    def test_f_uxy(self):
        assert f_UXY(12, 3, 4, 0, 0, 1) == 0
        # 1*C(12,2) + 0*(...) + (3-1-1+1)*C(2,2)*(12/2)^2
        assert f_UXY(12, 3, 4, 3, 1, 1) == 66 + 2 * 36 == 138

    def test_g2_main_term(self):
        assert g2_main_term(10, 3, 4, 2, 1) == 50
        assert g2_main_term(10, 3, 5, 3, 1) == 3 * comb(3, 2) * Fraction(10, 3) ** 2
        assert g2_main_term(10, 3, 4, 2, 3) == 2 * comb(10, 2)

    def test_homogeneous_main_term(self):
        # the multipartite terms scale by t^(r-1) when n scales by t
        for r in (3, 4):
            base = f_WXYZ(12, r, 5, 0, 2, 1, 1)
            assert f_WXYZ(24, r, 5, 0, 2, 1, 1) == base * 2 ** (r - 1)

    def test_h_values(self):
        val, (W, X, Y, Z) = h_value(complete(4), 3, 12)
        assert val == f_WXYZ(12, 3, 4, len(X), len(Y), len(W), len(Z))
        assert len(W) == 1
        with pytest.raises(ChromaticTooSmall):
            h_value(cycle(4), 3, 12)
        val, (U, X, Y) = h_prime_value(complete(4), 3, 12, 3)
        assert val == f_UXY(12, 3, 4, 3, len(X), len(Y))
        assert 3 >= len(X) + len(Y) - 1

    def test_h_is_minimum_over_small_splits(self):
        # for K4: W = {v} leaves a triangle; X removes nothing, Y one edge
        val, _ = h_value(complete(4), 3, 12)
        assert val <= f_WXYZ(12, 3, 4, 0, 1, 1, 2)


class TestRegistry:
    def test_evaluate(self):
        fv = evaluate("emc", {"n": 8, "r": 2, "s": 2})
        assert fv.value == 13 and fv.lower_or_exact == "exact_claimed"
        assert format_exact(evaluate("f_wxyz", dict(n=9, r=3, k=4, x=0, y=1, w=1, z=1)).value) == "189/4"
        assert format_exact(Fraction(6, 3)) == "2"
        with pytest.raises(BadParams):
            evaluate("nope", {})
        with pytest.raises(BadParams, match="s"):
            evaluate("emc", {"n": 3, "r": 2})
