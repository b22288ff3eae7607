import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from arcdom.errors import UnknownId
from arcdom.graph_core import (
    Color,
    Graph,
    Problem,
    Solution,
    check_p1_p2,
    coloring_of,
    connected_components,
    edges_of_coloring,
    intersection_graph,
    k4_free_edge_bound,
    line_graph,
    verify,
)
from arcdom.testkit import OCTAHEDRON_PAIRS
from arcdom.arc_model import CircularArcModel
from arcdom.weights import EDGE, INF, VERTEX, WeightMap, format_weight, parse_weight, to_weight, wsum

from conftest import C4, C6, K3, STAR, arc_models

G_C4 = Graph(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
G_K3 = Graph(3, [(0, 1), (1, 2), (0, 2)])
UNIT_V = WeightMap.unit(VERTEX)
UNIT_E = WeightMap.unit(EDGE)


# -- weights -------------------------------------------------------------------


def test_weight_arithmetic_with_infinity():
    assert Fraction(3, 2) + INF == INF
    assert wsum([Fraction(1, 2), Fraction(1, 3)]) == Fraction(5, 6)
    assert wsum([Fraction(1), INF, Fraction(-5)]) == INF
    assert Fraction(-10**9) < INF


@pytest.mark.parametrize("text, value", [("3/6", Fraction(1, 2)), ("-4/1", Fraction(-4)), ("inf", INF), ("7", Fraction(7))])
def test_parse_weight(text, value):
    assert parse_weight(text) == value


def test_format_weight_lowest_terms():
    assert format_weight(Fraction(6, 4)) == "3/2"
    assert format_weight(Fraction(2)) == "2/1"
    assert format_weight(INF) == "inf"


def test_to_weight_rejects_nan():
    with pytest.raises(ValueError):
        to_weight(math.nan)


def test_weight_map_default_and_edge_keys():
    w = WeightMap.edge({(2, 1): 5}, default=1)
    assert w[(1, 2)] == 5 and w[(2, 1)] == 5 and w[(0, 3)] == 1
    strict = WeightMap.vertex([4, 5])
    with pytest.raises(KeyError):
        strict[2]


# -- graphs -----------------------------------------------------------------


def test_intersection_graph_fixtures():
    assert intersection_graph(C4) == G_C4
    assert intersection_graph(K3) == G_K3
    assert intersection_graph(STAR) == Graph(4, [(0, 1), (0, 2), (0, 3)])


def test_graph_rejects_bad_edges():
    with pytest.raises(UnknownId):
        Graph(2, [(0, 2)])
    with pytest.raises(ValueError):
        Graph(2, [(1, 1)])


def test_line_graph_examples():
    lk3, _ = line_graph(G_K3)
    assert lk3.n == 3 and lk3.m == 3
    lp3, index = line_graph(Graph(3, [(0, 1), (1, 2)]))
    assert lp3.n == 2 and lp3.m == 1
    lc6, _ = line_graph(intersection_graph(C6))
    assert lc6.n == 6 and lc6.m == 6 and all(lc6.degree(v) == 2 for v in range(6))


def test_connected_components():
    star = intersection_graph(STAR)
    assert connected_components(star, removed=[0]) == [{1}, {2}, {3}]
    assert connected_components(G_C4) == [{0, 1, 2, 3}]
    assert connected_components(Graph(0)) == []


def test_k4_free_edge_bound():
    octa = intersection_graph(CircularArcModel(OCTAHEDRON_PAIRS))
    assert (octa.n, octa.m) == (6, 12) and k4_free_edge_bound(octa)
    k5 = Graph(5, [(u, v) for u in range(5) for v in range(u + 1, 5)])
    assert k4_free_edge_bound(k5)
    dense = Graph(10, [(u, v) for u in range(10) for v in range(u + 1, 10)][:21])
    assert not k4_free_edge_bound(dense)


def test_octahedron_is_complement_of_three_disjoint_edges():
    octa = intersection_graph(CircularArcModel(OCTAHEDRON_PAIRS))
    non_edges = [(u, v) for u in range(6) for v in range(u + 1, 6) if not octa.has_edge(u, v)]
    assert len(non_edges) == 3
    assert len({x for e in non_edges for x in e}) == 6


# -- verify ------------------------------------------------------------------------


def test_verify_examples():
    assert verify(Problem.MWPVD, G_C4, UNIT_V, [0, 1]) == (True, 2, None)
    ok, value, why = verify(Problem.MWEVD, G_C4, UNIT_V, [0, 2])
    assert not ok and value == INF and "twice" in why
    assert verify(Problem.MWPED, G_K3, UNIT_E, [(0, 1)]) == (True, 1, None)


def test_verify_efficient_rejects_adjacent_members():
    ok, _, why = verify(Problem.MWEVD, G_K3, UNIT_V, [0, 1])
    assert not ok and "adjacent" in why


def test_verify_matching_rejects_shared_vertex():
    p3 = Graph(3, [(0, 1), (1, 2)])
    ok, _, why = verify(Problem.MWEED, p3, UNIT_E, [(0, 1), (1, 2)])
    assert not ok and "matching" in why


def test_verify_unknown_ids():
    with pytest.raises(UnknownId):
        verify(Problem.MWPVD, G_C4, UNIT_V, [4])
    with pytest.raises(UnknownId):
        verify(Problem.MWPED, G_C4, UNIT_E, [(0, 2)])


def test_verify_empty_graph():
    assert verify(Problem.MWPED, Graph(3), UNIT_E, []) == (True, 0, None)
    assert verify(Problem.MWEVD, Graph(0), UNIT_V, []) == (True, 0, None)


def test_solution_invariants():
    with pytest.raises(ValueError):
        Solution(False, VERTEX, (1,), INF)
    sol = Solution.of(EDGE, [(3, 1), (0, 2)], 5, ("a",)).with_trace("b")
    assert sol.members == ((0, 2), (1, 3)) and sol.trace == ("b", "a")


# -- coloring ---------------------------------------------------------------------------


def test_coloring_examples():
    assert coloring_of(G_K3, [(0, 1)]) == (Color.GRAY, Color.GRAY, Color.WHITE)
    assert coloring_of(G_C4, [(0, 1), (1, 2)]) == (Color.GRAY, Color.BLACK, Color.GRAY, Color.WHITE)
    assert set(coloring_of(G_C4, G_C4.edges)) == {Color.BLACK}


def test_p1_p2_examples():
    assert check_p1_p2(G_K3, (Color.GRAY, Color.GRAY, Color.WHITE)) == (True, None)
    ok, why = check_p1_p2(G_K3, (Color.GRAY,) * 3)
    assert not ok and why.startswith("P1")
    # isolated white vertices are accepted
    assert check_p1_p2(Graph(2), (Color.WHITE, Color.WHITE)) == (True, None)


@given(arc_models(max_n=6), st.data())
@settings(max_examples=80, deadline=None)
def test_coloring_characterizes_perfect_edge_domination(model, data):
    g = intersection_graph(model)
    chosen = data.draw(st.sets(st.sampled_from(g.edges)) if g.m else st.just(set()))
    ok_def, _, _ = verify(Problem.MWPED, g, UNIT_E, chosen)
    colors = coloring_of(g, chosen)
    ok_col, _ = check_p1_p2(g, colors)
    if ok_def:
        assert ok_col and set(edges_of_coloring(g, colors)) == set(chosen)
    elif ok_col and set(edges_of_coloring(g, colors)) == set(chosen):
        pytest.fail("coloring accepted an edge set the definition rejects")
