from __future__ import annotations

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import graphs
from oracles import brute_bipartite_matching, brute_d2, brute_nu2, brute_path_cover, brute_star_cover, floyd
from myclab.enumeration import enumerate_graphs
from myclab.graph import BipartiteGraph, Graph, GraphError, complement, double_cover, named, power
from myclab.labeling import lambda_exact
from myclab.matching import (
    StarMatching,
    TutteRefutation,
    TwoMatchingCertificate,
    d2_condition,
    far_pairs_graph,
    i4,
    max_bipartite_matching,
    max_two_matching,
    nu2,
    path_cover_number,
    perfect_star_matching_condition,
    perfect_two_matching,
    star_matching_number,
)
from myclab.mycielski import mycielski


# ------------------------------------------------------------ bipartite matching


def test_bipartite_matching_examples():
    assert max_bipartite_matching(double_cover(named("cycle", 3))).size == 3
    assert max_bipartite_matching(double_cover(named("star", 3))).size == 2
    assert max_bipartite_matching(BipartiteGraph(0, 0, ())).size == 0
    assert max_bipartite_matching(BipartiteGraph(2, 3, (0, 0))).size == 0


@st.composite
def bipartite(draw):
    nl, nr = draw(st.integers(0, 5)), draw(st.integers(0, 5))
    adj = tuple(draw(st.integers(0, (1 << nr) - 1)) for _ in range(nl))
    return BipartiteGraph(nl, nr, adj)


@given(bipartite())
def test_bipartite_matching_is_maximum_and_valid(b):
    m = max_bipartite_matching(b)
    assert m.size == brute_bipartite_matching(b.n_left, b.n_right, b.left_adj)
    assert len({x for x, _ in m.edges}) == m.size == len({y for _, y in m.edges})
    assert all(b.left_adj[x] >> y & 1 for x, y in m.edges)


# ------------------------------------------------------------ 2-matchings


def test_nu2_examples():
    assert nu2(far_pairs_graph(named("path", 4))) == 2
    assert nu2(far_pairs_graph(named("path", 5))) == 4
    assert nu2(named("cycle", 5)) == 5


def test_nu2_matches_weight_oracle_up_to_6():
    for n in range(1, 7):
        for g in enumerate_graphs(n):
            assert nu2(g) == brute_nu2(g)


def test_perfect_two_matching_examples():
    res = perfect_two_matching(named("complete", 2))
    assert isinstance(res, TwoMatchingCertificate)
    assert res.edge_components == ((0, 1),) and res.cycle_components == ()
    ref = perfect_two_matching(named("star", 3))
    assert isinstance(ref, TutteRefutation)
    assert ref.independent_set == (1, 2, 3) and ref.neighborhood == (0,)
    cert = perfect_two_matching(far_pairs_graph(named("path", 6)))
    assert isinstance(cert, TwoMatchingCertificate)
    assert cert.edge_components == ((0, 3), (1, 4), (2, 5))


@given(graphs(max_n=8))
def test_two_matching_certificates(g):
    best = max_two_matching(g)
    best.check(g)
    assert best.weight == len(best.covered()) == nu2(g)
    res = perfect_two_matching(g)
    if isinstance(res, TwoMatchingCertificate):
        assert nu2(g) == g.order and res.is_perfect(g.order)
        res.check(g)
    else:
        assert nu2(g) < g.order
        s = res.independent_set
        assert s and all(not g.has_edge(a, b) for a in s for b in s)
        nb = {w for v in s for w in g.neighbors(v)}
        assert set(res.neighborhood) == nb and len(nb) < len(s)


def test_certificate_check_rejects_bad_structures():
    g = named("cycle", 4)
    for bad in (
        TwoMatchingCertificate(((0, 2),), ()),  # not an edge
        TwoMatchingCertificate(((0, 1), (1, 2)), ()),  # shared vertex
        TwoMatchingCertificate((), ((0, 1, 2, 3),)),  # even cycle
    ):
        with pytest.raises(GraphError):
            bad.check(g)


def test_certificate_json_roundtrip():
    cert = TwoMatchingCertificate(((0, 3),), ((1, 4, 6),))
    assert TwoMatchingCertificate.from_dict(cert.to_dict()) == cert
    with pytest.raises(GraphError):
        TwoMatchingCertificate.from_dict({"edges": [["a", 1]]})
    with pytest.raises(GraphError):
        TwoMatchingCertificate.from_dict([1])


# ------------------------------------------------------------ star matchings


def test_star_matching_examples():
    assert star_matching_number(named("complete", 2), 4)[0] == 2
    value, witness = star_matching_number(named("star", 5), 4)
    assert value == 5 and witness.order == 5
    witness.check(named("star", 5), 4)
    # q singleton parts leave exactly q isolated vertices in the complement
    assert i4(complement(named("complete_multipartite", [2, 2, 1, 1, 1, 1, 1]))) == 5
    assert i4(complement(named("complete_multipartite", [3, 1, 1, 1]))) == 3
    assert i4(complement(named("complete", 7))) == 7
    with pytest.raises(GraphError):
        star_matching_number(named("path", 17), 4)
    with pytest.raises(GraphError):
        star_matching_number(named("path", 3), 0)


def test_star_matching_rejects_bad_witness():
    with pytest.raises(GraphError):
        StarMatching(((0, (1, 2, 3, 4, 5)),)).check(named("star", 5), 4)
    with pytest.raises(GraphError):
        StarMatching(((1, (2,)),)).check(named("star", 5), 4)


def test_star_matching_matches_forest_oracle_up_to_5():
    for n in range(1, 6):
        for g in enumerate_graphs(n):
            for m in (1, 2, 4):
                value, witness = star_matching_number(g, m)
                assert value == brute_star_cover(g, m)
                witness.check(g, m)
                assert witness.order == value


def test_perfect_star_condition_examples():
    assert perfect_star_matching_condition(named("complete", 2), 4) == (True, None)
    holds, s = perfect_star_matching_condition(named("star", 5), 4)
    assert not holds and s == (1, 2, 3, 4, 5)
    # at m = 1 the inequality holds on K3, which has no perfect matching
    with pytest.raises(GraphError):
        perfect_star_matching_condition(named("complete", 3), 1)


def test_perfect_star_condition_equivalence_up_to_7():
    for n in range(1, 8):
        for g in enumerate_graphs(n):
            for m in (2, 3, 4):
                holds, s = perfect_star_matching_condition(g, m)
                assert holds == (star_matching_number(g, m)[0] == n)
                if not holds:
                    nb = {w for v in s for w in g.neighbors(v)}
                    assert m * len(nb) < len(s)


# ------------------------------------------------------------ path covers


def test_path_cover_examples():
    assert path_cover_number(named("empty", 5)) == 5
    assert path_cover_number(named("path", 7)) == 1
    assert path_cover_number(complement(mycielski(named("complete", 7)).graph)) == 3
    with pytest.raises(GraphError):
        path_cover_number(named("path", 19))


def test_path_cover_matches_permutation_oracle_up_to_6():
    for n in range(1, 7):
        for g in enumerate_graphs(n):
            assert path_cover_number(g) == brute_path_cover(g)


def test_lambda_from_complement_path_cover_up_to_6():
    for n in range(1, 7):
        for g in enumerate_graphs(n):
            lam = lambda_exact(g).value
            pv = path_cover_number(complement(g))
            assert (lam <= n - 1) == (pv == 1)
            if pv >= 2:
                assert lam == n + pv - 2


def test_mycielski_complement_path_cover_up_to_5():
    for n in range(1, 6):
        for g in enumerate_graphs(n):
            q = i4(complement(g))
            pv = path_cover_number(complement(mycielski(g).graph))
            assert (pv == 1) == (q <= 4)
            if q >= 5:
                assert pv == math.ceil(q / 2) - 1


# ------------------------------------------------------------ far-pairs condition


def test_d2_examples():
    assert d2_condition(named("path", 6)) == (True, None)
    assert d2_condition(named("cycle", 6)) == (True, None)
    holds, s = d2_condition(named("complete", 4))
    assert not holds and s == (0, 1, 2, 3)


def test_d2_matches_subset_oracle_up_to_7():
    for n in range(1, 8):
        for g in enumerate_graphs(n):
            assert d2_condition(g)[0] == brute_d2(g)


@settings(max_examples=60)
@given(graphs(min_n=9, max_n=10))
def test_d2_matches_subset_oracle_spot_9_10(g):
    holds, s = d2_condition(g)
    assert holds == brute_d2(g)
    if not holds:
        d = floyd(g)
        far = {x for x in range(g.order) for v in s if d[x][v] > 2}
        assert len(far) < len(s)


def test_far_pairs_graph_definition():
    g = named("path", 5)
    assert far_pairs_graph(g) == complement(power(g, 2))
    assert sorted(far_pairs_graph(g).edges()) == [(0, 3), (0, 4), (1, 4)]
