from fractions import Fraction

import pytest
from hypothesis import given, settings

from arcdom.arc_model import (
    LEAF_MINUS,
    LEAF_PLUS,
    CircularArcModel,
    Placement,
    coverage_extremes,
    edge_count,
    find_small_cover,
    insert_arcs,
)
from arcdom.errors import InternalInvariantError, KindMismatch, MappingViolated, WeightSignViolation
from arcdom.graph_core import Problem, Solution, intersection_graph, verify
from arcdom.solvers import (
    TriangleWeightings,
    build_pvd_models,
    combine_dim_triangle,
    map_back_pvd,
    map_forward_pvd,
    solve,
    solve_mwevd,
    solve_mwevd_via_domination,
)
from arcdom.testkit import Family, GenSpec, compare, generate, oracle_solve
from arcdom.weights import EDGE, INF, VERTEX, WeightMap

from conftest import C4, C6, K3, SINGLE, STAR, arc_models, weighted


def _k6_model():
    # six pairwise overlapping arcs: 15 edges > 2 * 6
    return CircularArcModel([(i, i + 6) for i in range(6)])


# -- worked examples ----------------------------------------------------------------------


def test_mwevd_examples():
    c6 = solve(Problem.MWEVD, C6)
    assert c6.value == 2 and verify(Problem.MWEVD, intersection_graph(C6), WeightMap.unit(VERTEX), c6.members)[0]
    assert not solve(Problem.MWEVD, C4).feasible
    single = solve(Problem.MWEVD, SINGLE, WeightMap.vertex([7]))
    assert single.members == (0,) and single.value == 7


def test_mweed_examples():
    c6 = solve(Problem.MWEED, C6)
    assert c6.value == 2 and "mweed/cycle" in c6.trace
    k3 = solve(Problem.MWEED, K3)
    assert k3.value == 1 and "mweed/small-cover" in k3.trace


def test_mweed_precheck_skips_solving():
    sol = solve(Problem.MWEED, _k6_model())
    assert not sol.feasible and sol.trace == ("mweed/edge-count-precheck",)


def test_mwpvd_examples():
    star = solve(Problem.MWPVD, STAR, WeightMap.vertex([5, 1, 1, -2]))
    assert star.members == (0, 3) and star.value == 3
    assert "mwpvd/universal-unique" in star.trace
    assert solve(Problem.MWPVD, C4).value == 2
    k3 = solve(Problem.MWPVD, K3)
    assert k3.value == 1 and "mwpvd/universal-multiple" in k3.trace


def test_mwped_examples():
    k3 = solve(Problem.MWPED, K3)
    assert k3.value == 1 and "mwped/three-cover" in k3.trace
    c4 = solve(Problem.MWPED, C4)
    assert c4.value == 2 and "mwped/cycle" in c4.trace


def test_mwped_cycle_with_pendant_matches_oracle():
    # C6 plus a leaf inside A2's private stretch (segment 3 lies only in arc 1)
    model, _ = insert_arcs(C6, [Placement((3, 0), (3, 1))])
    g = intersection_graph(model)
    assert g.neighbors(6) == (1,)
    for w in (WeightMap.unit(EDGE), WeightMap.edge({e: Fraction(k % 5 - 2, 1 + k % 3) for k, e in enumerate(g.edges)})):
        got = solve(Problem.MWPED, model, w, check=True)
        assert got.value == oracle_solve(Problem.MWPED, g, w).value
        assert "mwped/cycle-with-leaves" in got.trace


def test_degenerate_empty_model():
    empty = CircularArcModel([])
    for p in Problem:
        sol = solve(p, empty)
        assert sol.feasible and sol.value == 0 and sol.members == ()


# -- triangle combination ------------------------------------------------------------


def _toy_weightings(opposite_weight):
    omegas = tuple(WeightMap.edge({(1, 2): opposite_weight, (0, 2): 0, (0, 1): 0}, default=0) for _ in range(3))
    return TriangleWeightings(omegas, Fraction(21), Fraction(20), (0, 1, 2), (0, 1, 2), (3, 4, 5))


def test_combine_all_above_threshold_is_infeasible():
    dims = [Solution.of(EDGE, (), 25)] * 3
    assert not combine_dim_triangle(dims, _toy_weightings(3)).feasible


def test_combine_subtracts_opposite_edge_once():
    dims = [Solution.of(EDGE, (), 7), Solution.of(EDGE, (), 25), Solution.of(EDGE, (), 25)]
    assert combine_dim_triangle(dims, _toy_weightings(3)).value == 4


def _triangle_models():
    for seed in range(40):
        for n in range(5, 9):
            model, w = generate(GenSpec(seed, n, Family.RING, "nonneg", EDGE))
            if coverage_extremes(model)[1] == 3:
                yield model, w


def test_triangle_cut_end_to_end_matches_oracle():
    seen = 0
    for model, w in _triangle_models():
        g = intersection_graph(model)
        got = solve(Problem.MWEED, model, w, check=True)
        if edge_count(model) <= 2 * model.n:
            assert got.trace[0] == "mweed/triangle-cut"
            seen += 1
        want = oracle_solve(Problem.MWEED, g, w)
        assert (got.feasible, got.value) == (want.feasible, want.value)
    assert seen > 50


# -- perfect vertex domination models ------------------------------------------------


def test_pvd_models_structure():
    w = WeightMap.vertex([3, 1, 1, 1])
    models = build_pvd_models(C4, 1, 0, w)
    # the split gives 5 arcs; the first model adds two leaves, the others one
    assert [m.n for m, _, _ in models] == [7, 6, 6]
    m1, w1, s1 = models[0]
    left, right = s1.forward[0]
    assert w1[left] == w1[right] == Fraction(3, 2)
    for _, wi, si in models:
        for d in si.added:
            assert si.role_tags[d] in (LEAF_MINUS, LEAF_PLUS)
    assert all(models[1][1][x] == INF for x in models[1][2].forward[0])


def test_pvd_map_back():
    w = WeightMap.vertex([3, 1, 1, 1])
    (m1, w1, s1), (m2, w2, s2), _ = build_pvd_models(C4, 1, 0, w)
    left, right = s1.forward[0]
    back = map_back_pvd(Solution.of(VERTEX, (left, right, 2), Fraction(4)), s1, 1)
    assert back.members == (0, 2) and back.value == 4
    (leaf,) = s2.added
    back2 = map_back_pvd(Solution.of(VERTEX, (leaf, 2), Fraction(1)), s2, 2)
    assert back2.members == (2,)
    with pytest.raises(MappingViolated):
        map_back_pvd(Solution.of(VERTEX, (left,), INF), s1, 1)


def test_pvd_models_are_faithful_on_c4():
    w = WeightMap.vertex([3, 1, 1, 1])
    g = intersection_graph(C4)
    models = build_pvd_models(C4, 1, 0, w)
    smaps = [s for _, _, s in models]
    for members in ([0, 1], [1, 3], [0, 2], [0, 1, 2, 3]):
        ok, value, _ = verify(Problem.MWPVD, g, w, members)
        if not ok:
            continue
        i, derived = map_forward_pvd(C4, 1, 0, members, smaps)
        mi, wi, si = models[i - 1]
        ok_i, value_i, _ = verify(Problem.MWPVD, intersection_graph(mi), wi, derived)
        assert ok_i and value_i == value


# -- facade --------------------------------------------------------------------


def test_solve_rejects_wrong_kind():
    with pytest.raises(KindMismatch):
        solve(Problem.MWPED, C4, WeightMap.unit(VERTEX))


def test_solve_rejects_negative_weights_for_efficient_problems():
    with pytest.raises(WeightSignViolation):
        solve(Problem.MWEVD, C4, WeightMap.vertex([1, -1, 1, 1]))
    with pytest.raises(WeightSignViolation):
        solve(Problem.MWEED, C4, WeightMap.edge({(0, 1): -1}, default=1))


def test_check_mode_catches_a_broken_solver(monkeypatch):
    from arcdom import solvers

    bad = lambda model, w, g: Solution.of(VERTEX, (0,), Fraction(1))  # noqa: E731
    monkeypatch.setitem(solvers._SOLVERS, Problem.MWPVD, bad)
    with pytest.raises(InternalInvariantError):
        solve(Problem.MWPVD, C4, check=True)


@given(weighted(VERTEX, max_n=8))
@settings(max_examples=60, deadline=None)
def test_efficient_routes_agree(inst):
    model, g, w = inst
    a = solve_mwevd(model, w)
    b = solve_mwevd_via_domination(model, w, g)
    assert (a.feasible, a.value) == (b.feasible, b.value)


@given(arc_models(max_n=9))
@settings(max_examples=100, deadline=None)
def test_mweed_trace_matches_structure(model):
    sol = solve(Problem.MWEED, model)
    head = sol.trace[0]
    if edge_count(model) > 2 * model.n:
        assert sol.trace == ("mweed/edge-count-precheck",)
    elif edge_count(model) == 0:
        assert head == "mweed/no-edges"
    elif find_small_cover(model, 3) is not None:
        assert head == "mweed/small-cover"
    else:
        cmin, cmax, _, _ = coverage_extremes(model)
        if cmax >= 4:
            assert head == "mweed/clique4" and not sol.feasible
        elif cmin == 0:
            assert head == "mweed/interval"
        else:
            assert head == {2: "mweed/cycle", 3: "mweed/triangle-cut"}[cmax]


# -- against the oracle, family by family -----------------------------------------------

FAMILIES = [Family.RANDOM, Family.SHORT, Family.RING, Family.LEAFY_CYCLE, Family.COVER2, Family.COVER3, Family.INTERVAL, Family.STAR]


@pytest.mark.parametrize("family", FAMILIES, ids=lambda f: f.value)
@pytest.mark.parametrize("problem", list(Problem), ids=lambda p: p.value)
def test_solver_matches_oracle(problem, family):
    weights = "signed" if problem in (Problem.MWPVD, Problem.MWPED) else "nonneg"
    low = 4 if family in (Family.LEAFY_CYCLE, Family.RING) else 3
    for seed in range(12):
        for n in range(low, 9):
            model, w = generate(GenSpec(seed, n, family, weights, problem.kind))
            _, _, reason = compare(problem, model, w)
            assert reason is None, f"seed={seed} n={n}: {reason}"
