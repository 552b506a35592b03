import itertools

import pytest

from hgx.errors import BadParams
from hgx.hypercore import Hypergraph, isomorphic
from hgx.invariants import matching_number
from hgx.solver import (
    BOUND_ONLY,
    EQUAL,
    OPTIMAL,
    SearchOptions,
    check_certificate,
    max_edges,
    verify_theorem,
)

import oracles
from samples import C4, C4_3, K3, complete_bipartite, matching, path, single_edge, star

PATTERNS = {
    "K3": K3,
    "C4": C4,
    "P3": path(3),
    "P4": path(4),
    "M2": matching(2, 2),
    "claw": complete_bipartite(1, 3),
}


@pytest.mark.parametrize("name", sorted(PATTERNS))
@pytest.mark.parametrize("n", [4, 5, 6])
def test_graphs_agree_with_enumeration(name, n):
    F = PATTERNS[name]
    res = max_edges(n, 2, [F])
    assert res.optimal
    assert res.optimum == oracles.turan_number_graphs(n, F)
    assert check_certificate(res) == (True, [])


@pytest.mark.parametrize("n,s", [(5, 1), (6, 1), (6, 2)])
def test_matching_constraint_agrees_with_enumeration(n, s):
    res = max_edges(n, 2, [C4], SearchOptions(forbid_matching=s))
    assert res.optimum == oracles.turan_number_graphs(n, C4, s)


def test_three_graphs_agree_with_enumeration():
    # all 3-graphs on 5 vertices: 2^10 edge sets
    triples = list(itertools.combinations(range(5), 3))
    for F in (Hypergraph(3, 5, [(0, 1, 2), (0, 3, 4)]), Hypergraph(3, 4, [(0, 1, 2), (1, 2, 3)])):
        best = 0
        for mask in range(1 << len(triples)):
            H = Hypergraph(3, 5, [t for i, t in enumerate(triples) if mask >> i & 1])
            if H.m > best and not oracles.contains_copy(F, H):
                best = H.m
        assert max_edges(5, 3, [F]).optimum == best


class TestExamples:
    def test_star(self):
        res = max_edges(5, 2, [matching(2, 2)])
        assert res.optimum == 4
        assert res.witness.m == 4
        assert isomorphic(res.witness, star(5, 2))

    def test_mantel(self):
        res = max_edges(5, 2, [K3])
        assert res.optimum == 6
        assert isomorphic(res.witness, complete_bipartite(2, 3))

    def test_intersecting_small(self):
        assert max_edges(4, 3, [matching(2, 3)]).optimum == 4

    def test_matching_option_alone(self):
        res = max_edges(7, 3, [], SearchOptions(forbid_matching=1))
        assert res.optimum == 15
        assert matching_number(res.witness) == 1

    def test_trivial_families(self):
        assert max_edges(5, 3, [single_edge(3)]).optimum == 0
        assert max_edges(5, 3, [], SearchOptions(forbid_matching=0)).optimum == 0
        assert max_edges(4, 2, [matching(3, 2)]).optimum == 6

    def test_bad_params(self):
        with pytest.raises(BadParams):
            max_edges(3, 4, [])
        with pytest.raises(BadParams):
            SearchOptions(node_budget=0)


class TestCertificates:
    def result(self):
        return max_edges(6, 2, [K3])

    def test_good(self):
        assert check_certificate(self.result()) == (True, [])

    def test_planted_copy(self):
        res = self.result()
        res.witness = res.witness.with_edges([e for e in [(0, 1), (0, 2), (1, 2)] if e not in res.witness.edge_set])
        res.optimum = res.witness.m
        ok, reasons = check_certificate(res)
        assert not ok and reasons == ["forbidden_pattern"]

    def test_count_mismatch(self):
        res = self.result()
        res.optimum += 1
        assert check_certificate(res) == (False, ["count_mismatch"])

    def test_matching_too_large(self):
        res = max_edges(6, 2, [], SearchOptions(forbid_matching=1))
        res.witness = Hypergraph(2, 6, [(0, 1), (2, 3), (4, 5), (0, 2), (0, 3)])
        res.optimum = res.witness.m
        assert check_certificate(res)[1] == ["matching_too_large"]

    def test_shape(self):
        res = self.result()
        res.witness = Hypergraph(2, 5, [])
        res.optimum = 0
        assert "shape_mismatch" in check_certificate(res)[1]


class TestSearchBehaviour:
    def test_monotone_in_n(self):
        values = [max_edges(n, 3, [C4_3], SearchOptions(forbid_matching=1)).optimum for n in range(4, 9)]
        assert values == sorted(values)

    def test_monotone_in_family(self):
        base = max_edges(6, 2, [C4]).optimum
        assert max_edges(6, 2, [C4, K3]).optimum <= base
        assert max_edges(6, 2, [C4], SearchOptions(forbid_matching=2)).optimum <= base

    def test_symmetry_off_agrees(self):
        for F, n, s in ((C4_3, 7, 1), (K3, 6, 2), (Hypergraph(3, 4, [(0, 1, 2), (1, 2, 3)]), 6, None)):
            a = max_edges(n, F.r, [F], SearchOptions(forbid_matching=s))
            b = max_edges(n, F.r, [F], SearchOptions(forbid_matching=s, symmetry=False, vertex_deletion=False))
            assert a.optimum == b.optimum

    def test_workers_agree(self):
        one = max_edges(8, 3, [C4_3], SearchOptions(forbid_matching=2))
        two = max_edges(8, 3, [C4_3], SearchOptions(forbid_matching=2, parallel=2))
        assert one.optimum == two.optimum
        assert check_certificate(two) == (True, [])

    def test_single_worker_deterministic(self):
        a = max_edges(7, 2, [C4], SearchOptions(forbid_matching=2))
        b = max_edges(7, 2, [C4], SearchOptions(forbid_matching=2))
        assert a.witness == b.witness and a.nodes == b.nodes

    def test_budget_gives_bound_only(self):
        res = max_edges(9, 3, [C4_3], SearchOptions(forbid_matching=2, node_budget=1, vertex_deletion=False))
        assert res.proof_status == BOUND_ONLY
        assert res.upper_bound >= res.optimum
        assert check_certificate(res) == (True, [])

    def test_json(self):
        res = max_edges(5, 2, [K3])
        out = res.to_json()
        assert set(out) >= {"n", "r", "family", "optimum", "proof_status", "witness", "nodes", "elapsed_ms"}
        assert out["proof_status"] == OPTIMAL
        assert len(out["witness"]["edges"]) == 6


class TestVerify:
    def test_emc_graphs(self):
        rep = verify_theorem("emc", {"n": [5, 6], "s": 1, "r": 2})
        assert rep.verdicts() == [EQUAL, EQUAL]
        assert rep.ok
        assert [p.solver for p in rep.points] == [4, 5]

    def test_chi3_triangle(self):
        rep = verify_theorem("chi3", {"n": [6, 7], "s": 2, "F": K3})
        assert [p.formula for p in rep.points] == [8, 10]
        assert all(p.solver >= p.formula for p in rep.points)
        assert rep.derived["family_size"] == 2
        assert rep.derived["ex_s[2]"] == 0

    def test_two_chromatic_single_triple(self):
        rep = verify_theorem("two_chromatic_bounds", {"n": [6, 7], "s": [0, 1], "F": single_edge(3)})
        for p in rep.points:
            assert p.lower <= p.solver <= p.upper
        assert rep.ok

    def test_unknown(self):
        with pytest.raises(BadParams):
            verify_theorem("nope", {"n": 5, "s": 1})
        with pytest.raises(BadParams):
            verify_theorem("emc", {"n": 5})
