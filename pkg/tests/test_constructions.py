import itertools

import pytest

from hgx.constructions import (
    A_nrs,
    ConstructionSpec,
    G1,
    G1prime,
    G2,
    G2prime,
    G_nls,
    H_i_construction,
    NAMES,
    balanced_parts,
    coarsen,
    complete_multipartite_uniform,
    core_cover,
    count_A_nrs,
    count_core_cover,
    count_crosscut_star,
    count_H_i,
    crosscut_star,
    turan_graph,
)
from hgx.errors import ArityExceedsVertices, BadParams, UniformityMismatch
from hgx.formulas import emc_formula
from hgx.hypercore import Hypergraph, is_free, isomorphic, validate
from hgx.invariants import chromatic_number, expansion, m_value, matching_number

from samples import complete, complete_bipartite, matching, single_edge, star


def count_by_filter(n, r, keep):
    return sum(1 for e in itertools.combinations(range(n), r) if keep(set(e)))


class TestGraphs:
    def test_turan(self):
        assert isomorphic(turan_graph(4, 2), complete_bipartite(2, 2))
        assert turan_graph(9, 2).m == 20
        assert turan_graph(5, 1).m == 0
        assert turan_graph(7, 3).m == 16

    def test_gnls(self):
        assert isomorphic(G_nls(10, 2, 2), complete_bipartite(2, 8))
        assert G_nls(7, 3, 2).m == 11
        assert G_nls(6, 2, 0).m == 0

    def test_balanced_parts(self):
        assert balanced_parts(7, 3) == [3, 2, 2]
        # the merged block stays last so vertex labels line up with the finer partition
        assert coarsen([2, 2, 2]) == [2, 4]
        assert coarsen([3, 3, 2, 2]) == [3, 3, 4]


class TestStarFamilies:
    def test_examples(self):
        assert A_nrs(4, 3, 0).m == 0
        assert isomorphic(A_nrs(5, 2, 1), star(5, 2))
        assert A_nrs(8, 3, 2).m == 36
        with pytest.raises(ArityExceedsVertices):
            A_nrs(3, 4, 1)

    def test_a_nrs_meets_core(self):
        H = A_nrs(9, 3, 2)
        assert all(set(e) & {0, 1} for e in H.edges)
        assert H.m == count_by_filter(9, 3, lambda e: e & {0, 1})

    def test_crosscut_star(self):
        assert crosscut_star(10, 3, 2).m == 56
        assert crosscut_star(7, 3, 0).m == 0
        assert isomorphic(crosscut_star(5, 2, 1), star(5, 2))
        H = crosscut_star(8, 3, 2)
        assert all(len(set(e) & {0, 1}) == 1 for e in H.edges)

    def test_core_cover(self):
        assert core_cover(Hypergraph.empty(3, 2), 6, 3).m == 16
        assert core_cover(Hypergraph.empty(3, 0), 6, 3).m == 0
        # 1 core triple + 3*C(3,2) + 3*C(3,1) mixed triples
        H = core_cover(single_edge(3), 6, 3)
        assert H.m == count_by_filter(6, 3, lambda e: e & {0, 1, 2}) == 19
        with pytest.raises(UniformityMismatch):
            core_cover(complete(3), 6, 3)

    @pytest.mark.parametrize("n,r,s", [(7, 3, 1), (8, 3, 2), (9, 4, 2), (10, 3, 3)])
    def test_matching_free(self, n, r, s):
        assert matching_number(A_nrs(n, r, s)) <= s
        assert is_free(A_nrs(n, r, s), [matching(s + 1, r)])
        assert is_free(crosscut_star(n, r, s), [matching(s + 1, r)])


class TestThreeGraphs:
    def test_h_i_examples(self):
        assert H_i_construction(12, 3, 2, 2).m == 36
        assert H_i_construction(12, 3, 1, 3).m == 60
        assert H_i_construction(4, 3, 1, 2).m == 0
        with pytest.raises(BadParams):
            H_i_construction(12, 3, 4, 2)

    @pytest.mark.parametrize("n,s,i,ell", [(8, 2, 1, 3), (9, 3, 2, 3), (9, 2, 2, 4), (10, 3, 3, 2)])
    def test_h_i_matching_free(self, n, s, i, ell):
        H = H_i_construction(n, s, i, ell)
        assert all(min(e) < s for e in H.edges)
        assert matching_number(H) <= s
        assert H.m == count_H_i(n, s, i, ell)

    def test_g1(self):
        assert G1(10, 3, 2).m == 36
        assert G1(7, 3, 1).m == 0
        assert G1(6, 4, 3).m == 8

    def test_g1_free_of_expansion(self):
        for G in (complete(3), complete_bipartite(1, 3)):
            m = m_value(G)[0]
            H = G1(8, 3, m)
            assert is_free(H, [expansion(G, 3)])

    def test_g1prime(self):
        H = G1prime(9, 3, 4, 1, 1, 1, 1)
        # B: C(6,2); A: parts (4, 2) give 8 pairs; C: parts (2, 2, 2) give 12
        assert H.m == 15 + 8 + 12
        assert G1prime(9, 3, 3, 1, 0, 0, 1).m == 0

    def test_g2(self):
        assert G2(10, 3, 2, 1, 4).m == 32
        assert G2(10, 3, 2, 3, 3).m == 56
        assert G2(8, 3, 1, 1, 3).m == 0

    def test_g2prime(self):
        # A: C(8,2) = 28; B: parts (3,3,2) give 21; C: parts (5,3) give 15
        assert G2prime(11, 3, 3, 4, 1, 2).m == 28 + 21 + 15
        # s = x+y-1 leaves C empty: C(7,2) plus T(7,3) with 16 pairs
        assert G2prime(9, 3, 2, 4, 1, 2).m == 21 + 16
        with pytest.raises(BadParams):
            G2prime(11, 3, 1, 4, 1, 2)

    def test_g2prime_reduces_to_g2(self):
        # x=0, y=1: only C-vertices, each joined to the same (k-2)-partite graph;
        # the parts follow the coarsening rule rather than G2's balanced split
        H = G2prime(10, 3, 2, 4, 0, 1)
        parts = coarsen(balanced_parts(8, 3))
        g0 = complete_multipartite_uniform(parts, 2)
        expected = [(a, u + 2, v + 2) for a in range(2) for u, v in g0.edges]
        assert H == Hypergraph(3, 10, expected)
        assert G2(10, 3, 2, 1, 4).m == 2 * 16 and H.m == 2 * 15

    def test_g2prime_c_empty(self):
        H = G2prime(10, 3, 3, 4, 2, 2)
        assert all(e[0] < 3 for e in H.edges)
        assert not any(e[0] == 3 for e in H.edges)

    def test_nesting(self):
        coarse = complete_multipartite_uniform(coarsen(balanced_parts(8, 3)), 2)
        fine = complete_multipartite_uniform(balanced_parts(8, 3), 2)
        assert coarse.edge_set <= fine.edge_set


class TestMultipartite:
    def test_examples(self):
        assert isomorphic(complete_multipartite_uniform([2, 2], 2), complete_bipartite(2, 2))
        assert complete_multipartite_uniform([2, 2, 2], 3).m == 8
        assert complete_multipartite_uniform([5], 2).m == 0
        assert complete_multipartite_uniform([3, 0, 2], 2).m == 6

    def test_chromatic(self):
        H = complete_multipartite_uniform([2, 2, 2, 1], 3)
        assert chromatic_number(H) == 2


class TestNamedDispatch:
    def test_every_name_builds_valid_deterministic(self):
        params = {
            "turan_graph": dict(n=7, ell=3),
            "G_nls": dict(n=7, ell=3, s=2),
            "A_nrs": dict(n=7, r=3, s=2),
            "crosscut_star": dict(n=7, r=3, a=2),
            "H_i": dict(n=8, s=2, i=1, ell=3),
            "G1": dict(n=8, r=3, m=3),
            "G1prime": dict(n=9, r=3, k=4, w=1, x=1, y=1, z=1),
            "G2": dict(n=9, r=3, s=2, mprime=2, k=4),
            "G2prime": dict(n=9, r=3, s=2, k=4, x=1, y=1),
            "core_cover": dict(n=7, r=3),
            "complete_multipartite_uniform": dict(r=3),
        }
        for name in NAMES:
            spec = ConstructionSpec(name, params[name], core=single_edge(3), parts=(2, 2, 1))
            H = validate(spec.build())
            assert H == spec.build()
            assert H.m == spec.edge_count()

    def test_aliases_and_errors(self):
        assert ConstructionSpec("anrs", dict(n=5, r=2, s=1)).name == "A_nrs"
        with pytest.raises(BadParams):
            ConstructionSpec("nope")
        with pytest.raises(BadParams, match="s"):
            ConstructionSpec("A_nrs", dict(n=5, r=2)).build()


@pytest.mark.parametrize("r", [1, 2, 3, 4])
def test_counts_match_builds(r):
    for n in range(r, 11):
        for s in range(0, min(n, 4) + 1):
            assert A_nrs(n, r, s).m == count_A_nrs(n, r, s) == emc_formula(n, r, s)
            if r <= n - s + 1:
                assert crosscut_star(n, r, s).m == count_crosscut_star(n, r, s)
            if s <= n:
                assert core_cover(Hypergraph.empty(r, s), n, r).m == count_core_cover(0, s, n, r)
