"""The four circular-arc domination solvers with their case dispatch.

Every solver takes a model and a weight map on its intersection graph and
returns a :class:`Solution` whose ``trace`` lists the case labels visited,
outermost first. Reductions build derived models by surgery, solve there and
pull the answer back through the :class:`SurgeryMap`.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .arc_model import (
    LEAF_MINUS,
    LEAF_PLUS,
    LEFT_PART,
    RIGHT_PART,
    CircularArcModel,
    CycleStructure,
    Placement,
    SurgeryMap,
    arcs_at,
    coverage_extremes,
    cut_at,
    edge_count,
    extract_cycle_structure,
    find_small_cover,
    insert_arcs,
    universal_arcs,
)
from .errors import (
    InconsistentMapping,
    InternalInvariantError,
    KindMismatch,
    MappingViolated,
    PreconditionViolated,
    WeightSignViolation,
)
from .graph_core import (
    Color,
    Graph,
    Problem,
    Solution,
    check_p1_p2,
    connected_components,
    intersection_graph,
    verify,
)
from .subroutines import (
    solve_cycle_dp,
    solve_dim_fixed_domset,
    solve_dim_interval,
    solve_efficient_sweep,
    solve_mwds_ca,
    solve_mwpvd_interval,
    solve_mwped_interval,
)
from .weights import EDGE, INF, VERTEX, WeightMap, edge_key, is_finite, wsum

# -- helpers ---------------------------------------------------------------------


def _best(candidates) -> Solution | None:
    """Cheapest feasible candidate; ties go to the smaller member tuple."""
    best = None
    for sol in candidates:
        if sol is None or not sol.feasible or not is_finite(sol.value):
            continue
        if best is None or (sol.value, sol.members) < (best.value, best.members):
            best = sol
    return best


def _derived_edge_weights(g: Graph, rule) -> WeightMap:
    return WeightMap.edge({e: rule(*e) for e in g.edges})


def _pull_edges(edges, smap: SurgeryMap):
    """Map derived edges to original ones, dropping those touching added arcs."""
    out = set()
    for a, b in edges:
        sa, sb = smap.source(a), smap.source(b)
        if sa is None or sb is None:
            continue
        if sa == sb:
            raise InternalInvariantError(f"derived edge ({a}, {b}) collapses onto one arc")
        out.add(edge_key(sa, sb))
    return sorted(out)


def _pull_edge_solution(sol: Solution, smap: SurgeryMap, w: WeightMap, label: str) -> Solution:
    if not sol.feasible or not is_finite(sol.value):
        return Solution.infeasible(EDGE, (label,))
    members = _pull_edges(sol.members, smap)
    value = wsum(w[e] for e in members)
    if value != sol.value:
        raise InternalInvariantError(
            f"{label}: pulled-back weight {value} differs from derived optimum {sol.value}"
        )
    return Solution.of(EDGE, members, value, (label,) + sol.trace)


def _max_witness(model: CircularArcModel):
    _, cmax, _, seg = coverage_extremes(model)
    return cmax, seg.index


# -- efficient vertex domination -------------------------------------------------


def solve_mwevd(model: CircularArcModel, w: WeightMap) -> Solution:
    """Minimum-weight efficient dominating set. Weights of any sign are accepted."""
    return solve_efficient_sweep(model, w).with_trace("mwevd/disjoint-arc-sweep")


def solve_mwevd_via_domination(model: CircularArcModel, w: WeightMap, g: Graph | None = None) -> Solution:
    """Same optimum through a dominating-set instance with reshaped weights.

    Each vertex costs ``(M + c)|N[v]| + w(v)`` with ``c = max(0, -min w)`` and
    ``M = 1 + n(max|w| + c)``. The dominating sets minimizing this have the
    least possible ``sum |N[v]|``, and that sum equals ``n`` exactly when the
    closed neighborhoods partition the vertices.
    """
    n = model.n
    if n == 0:
        return Solution.of(VERTEX, (), Fraction(0), ("mwevd/dominating-set",))
    g = g or intersection_graph(model)
    vals = [w[v] for v in range(n)]
    if not all(is_finite(x) for x in vals):
        raise PreconditionViolated("the dominating-set route needs finite weights")
    c = max(Fraction(0), -min(vals))
    big = 1 + n * (max(abs(x) for x in vals) + c)
    closed = [g.degree(v) + 1 for v in range(n)]
    reshaped = WeightMap.vertex({v: (big + c) * closed[v] + vals[v] for v in range(n)})
    ds = solve_mwds_ca(model, reshaped, g)
    if sum(closed[v] for v in ds.members) != n:
        return Solution.infeasible(VERTEX, ("mwevd/dominating-set",))
    value = ds.value - n * (big + c)
    return Solution.of(VERTEX, ds.members, value, ("mwevd/dominating-set",))


# -- efficient edge domination (dominating induced matching) -----------------------


@dataclass(frozen=True)
class TriangleWeightings:
    """Three weightings of a model cut through a point covered by three arcs.

    ``lower[i]`` and ``upper[i]`` are the two pieces of original arc
    ``originals[i]``; ``omegas[i]`` prices every triangle edge at ``lower[i]``
    or ``upper[i]`` at ``big_m`` so that the two copies of the opposite edge
    are the only affordable triangle edges.
    """

    omegas: tuple
    big_m: Fraction
    threshold: Fraction
    originals: tuple
    lower: tuple
    upper: tuple
    cut_map: SurgeryMap | None = None

    def opposite(self, i: int) -> tuple[int, int]:
        j, k = (x for x in range(3) if x != i)
        return j, k


def _big_m(w: WeightMap, edges) -> tuple[Fraction, Fraction]:
    vals = [w[e] for e in edges if is_finite(w[e])]
    if all(x >= 0 for x in vals):
        total = wsum(vals)
        return 1 + 2 * total, 2 * total
    # with negative entries an affordable solution can sit below -sum|w|
    total = wsum(abs(x) for x in vals)
    return 1 + 3 * total, 2 * total


def build_triangle_weightings(model: CircularArcModel, w: WeightMap, seg: int, g: Graph | None = None):
    """Cut at ``seg`` (covered by exactly three arcs) and build the three weightings.

    Returns ``(cut_model, cut_graph, TriangleWeightings)``.
    """
    g = g or intersection_graph(model)
    through = sorted(arcs_at(model, seg))
    if len(through) != 3:
        raise PreconditionViolated(f"segment {seg} is covered by {len(through)} arcs, not 3")
    cut_model, smap = cut_at(model, seg)
    gp = intersection_graph(cut_model)
    lower = tuple(smap.forward[v][0] for v in through)
    upper = tuple(smap.forward[v][1] for v in through)
    slot = {}
    for i in range(3):
        slot[lower[i]] = i
        slot[upper[i]] = i
    big_m, threshold = _big_m(w, g.edges)
    omegas = []
    for i in range(3):
        def rule(a, b, i=i):
            if a in slot and b in slot and (smap.role_tags[a] == smap.role_tags[b]):
                if i in (slot[a], slot[b]):
                    return big_m
            return w[(smap.source(a), smap.source(b))]

        omegas.append(_derived_edge_weights(gp, rule))
    tw = TriangleWeightings(tuple(omegas), big_m, threshold, tuple(through), lower, upper, smap)
    return cut_model, gp, tw


def triangles_separated(gp: Graph, tw: TriangleWeightings) -> bool:
    """The two cut triangles share no vertex and no edge joins them."""
    lo, up = set(tw.lower), set(tw.upper)
    if lo & up:
        return False
    return not any(gp.has_edge(a, b) for a in lo for b in up)


def combine_dim_triangle(dims, tw: TriangleWeightings) -> Solution:
    """Merge the three cut-model optima into the optimum of the original graph.

    A weighting whose optimum exceeds ``tw.threshold`` had to pay a
    forbidden triangle edge and contributes nothing. Otherwise the two
    copies of the opposite triangle edge collapse into the original edge
    and its weight is subtracted once.
    """
    label = "mweed/triangle-cut"
    candidates = []
    for i, sol in enumerate(dims):
        if sol is None or not sol.feasible or sol.value > tw.threshold:
            continue
        j, k = tw.opposite(i)
        low = edge_key(tw.lower[j], tw.lower[k])
        high = edge_key(tw.upper[j], tw.upper[k])
        value = sol.value - tw.omegas[i][low]
        members = None
        if sol.members or tw.cut_map is not None:
            edges = set(sol.members)
            if low not in edges or high not in edges:
                raise InconsistentMapping(
                    f"weighting {i + 1}: optimum lacks the copies of the opposite triangle edge"
                )
            rest = [e for e in edges if e not in (low, high)]
            mapped = _pull_edges(rest, tw.cut_map) if tw.cut_map is not None else rest
            members = sorted(set(mapped) | {edge_key(tw.originals[j], tw.originals[k])})
        candidates.append(Solution.of(EDGE, members or (), value, (label,)))
    best = _best(candidates)
    return best if best is not None else Solution.infeasible(EDGE, (label,))


def prune_pendants(cs: CycleStructure, w: WeightMap) -> CycleStructure:
    """Keep one cheapest leaf per cycle vertex (lowest id on ties)."""
    kept = {}
    for p in cs.cycle:
        leaves = cs.leaves(p)
        if leaves:
            kept[p] = (min(leaves, key=lambda leaf: (w[(p, leaf)], leaf)),)
    return CycleStructure(cs.cycle, kept)


def solve_mweed(model: CircularArcModel, w: WeightMap, g: Graph | None = None) -> Solution:
    """Minimum-weight dominating induced matching (efficient edge domination)."""
    n = model.n
    if n == 0:
        return Solution.of(EDGE, (), Fraction(0), ("mweed/empty",))
    if edge_count(model) > 2 * n:
        return Solution.infeasible(EDGE, ("mweed/edge-count-precheck",))
    g = g or intersection_graph(model)
    if g.m == 0:
        return Solution.of(EDGE, (), Fraction(0), ("mweed/no-edges",))
    cover = find_small_cover(model, 3)
    if cover is not None:
        return solve_dim_fixed_domset(g, w, cover, model).with_trace("mweed/small-cover")
    cmin, cmax, _, max_seg = coverage_extremes(model)
    if cmax >= 4:
        return Solution.infeasible(EDGE, ("mweed/clique4",))
    if cmin == 0:
        return solve_dim_interval(model, w, g=g).with_trace("mweed/interval")
    if cmax == 2:
        cs = prune_pendants(extract_cycle_structure(model), w)
        return solve_cycle_dp("DIM", cs, w).with_trace("mweed/cycle")
    cut_model, gp, tw = build_triangle_weightings(model, w, max_seg.index, g)
    dims = [solve_dim_interval(cut_model, om, g=gp) for om in tw.omegas]
    return combine_dim_triangle(dims, tw)


# -- perfect vertex domination --------------------------------------------------------


def build_pvd_models(model: CircularArcModel, seg: int, v: int, w: WeightMap):
    """The three interval models obtained by splitting arc ``v`` at ``seg``.

    ``seg`` must be covered by ``v`` alone. Every model replaces ``v`` by a
    left piece ``v-`` (keeping id ``v``) and a right piece ``v+``. The first
    model adds an unaffordable leaf on each side and halves ``v``'s weight;
    the second adds a free leaf next to ``v-`` and makes both pieces
    unaffordable; the third mirrors the second on the ``v+`` side.
    Returns a list of ``(model, weights, surgery_map)``.
    """
    if arcs_at(model, seg) != frozenset({v}):
        raise PreconditionViolated(f"segment {seg} is not covered by arc {v} alone")
    if universal_arcs(model):
        raise PreconditionViolated("model has a universal arc")
    cut_model, cmap = cut_at(model, seg)
    size = cut_model.grid_size
    cs = cmap.cut_segment
    v_plus = cmap.forward[v][1]
    minus_leaf = Placement(((cs - 1) % size, 0), (cs, 0), LEAF_MINUS)
    plus_leaf = Placement((cs, 1), ((cs + 1) % size, 0), LEAF_PLUS)
    half = Fraction(w[v]) / 2 if is_finite(w[v]) else INF
    specs = [
        ([minus_leaf, plus_leaf], half, INF, 0),
        ([minus_leaf], INF, 0, None),
        ([plus_leaf], INF, 0, None),
    ]
    out = []
    for placements, piece_w, first_leaf_w, second_leaf_w in specs:
        new_model, imap = insert_arcs(cut_model, placements)
        smap = cmap.then(imap)
        vals = {x: w[x] for x in range(model.n) if x != v}
        vals[v] = piece_w
        vals[v_plus] = piece_w
        for k, d in enumerate(imap.added):
            vals[d] = INF if placements is specs[0][0] else 0
        out.append((new_model, WeightMap.vertex(vals), smap))
    return out


def map_back_pvd(sol: Solution, smap: SurgeryMap, i: int) -> Solution:
    """Pull a solution of model ``i`` (1, 2 or 3) back to the original graph."""
    if not sol.feasible or not is_finite(sol.value):
        raise MappingViolated(f"model {i}: solution uses an unaffordable vertex")
    tags = smap.role_tags
    pieces = [d for d in sol.members if tags.get(d) in (LEFT_PART, RIGHT_PART)]
    leaves = [d for d in sol.members if tags.get(d) in (LEAF_MINUS, LEAF_PLUS)]
    if i == 1:
        if leaves:
            raise MappingViolated("model 1: an unaffordable leaf is in the solution")
        if len(pieces) not in (0, 2):
            raise MappingViolated("model 1: exactly one piece of the split arc is chosen")
    elif pieces:
        raise MappingViolated(f"model {i}: a piece of the split arc is in the solution")
    members = sorted({smap.source(d) for d in sol.members if smap.source(d) is not None})
    return Solution.of(VERTEX, members, sol.value, sol.trace)


def map_forward_pvd(model: CircularArcModel, seg: int, v: int, members, smaps):
    """Push a perfect dominating set of the original graph into one of the models.

    Returns ``(i, derived_members)``: model 1 when ``v`` is chosen (both
    pieces replace it), otherwise model 2 or 3 according to which end of
    ``v`` its dominator overlaps, adding that model's free leaf.
    """
    members = set(members)
    if v in members:
        smap = smaps[0]
        derived = set()
        for x in members:
            derived.update(smap.forward[x])
        return 1, sorted(derived)
    dominators = [z for z in members if model.intersects(z, v)]
    if len(dominators) != 1:
        raise PreconditionViolated(f"arc {v} is not dominated exactly once")
    z = dominators[0]
    i = 2 if model.contains_point(z, model.end(v)) else 3
    smap = smaps[i - 1]
    derived = {smap.forward[x][0] for x in members}
    derived.update(smap.added)
    return i, sorted(derived)


def solve_mwpvd(model: CircularArcModel, w: WeightMap, g: Graph | None = None) -> Solution:
    """Minimum-weight perfect dominating set; weights of any sign."""
    n = model.n
    if n == 0:
        return Solution.of(VERTEX, (), Fraction(0), ("mwpvd/empty",))
    g = g or intersection_graph(model)
    everything = Solution.of(VERTEX, range(n), wsum(w[v] for v in range(n)), ("mwpvd/all-vertices",))
    universal = universal_arcs(model)
    if len(universal) >= 2:
        singles = [Solution.of(VERTEX, (u,), w[u], ("mwpvd/single-universal",)) for u in universal]
        return _best([everything] + singles).with_trace("mwpvd/universal-multiple")
    if len(universal) == 1:
        u = universal[0]
        chosen = {u}
        for comp in connected_components(g, removed=(u,)):
            if wsum(w[x] for x in comp) < 0:
                chosen.update(comp)
        value = wsum(w[x] for x in sorted(chosen))
        return Solution.of(VERTEX, chosen, value, ("mwpvd/universal-unique",))

    candidates = [solve_efficient_sweep(model, w).with_trace("mwpvd/efficient")]
    cmin = int(model.coverage.min())
    if cmin == 0:
        path = "mwpvd/interval"
        candidates.append(solve_mwpvd_interval(model, w, g))
    elif cmin >= 2:
        path = "mwpvd/all-vertices"
        candidates.append(everything)
    else:
        path = "mwpvd/split-single-arc"
        seg = int(np.argmin(model.coverage))
        (v,) = arcs_at(model, seg)
        for i, (mi, wi, smap) in enumerate(build_pvd_models(model, seg, v, w), start=1):
            sub = solve_mwpvd_interval(mi, wi)
            if sub.feasible and is_finite(sub.value):
                candidates.append(map_back_pvd(sub, smap, i).with_trace(f"mwpvd/model-{i}"))
    best = _best(candidates)
    if best is None:
        raise InternalInvariantError("no perfect dominating set found, yet V always qualifies")
    return best.with_trace(path)


# -- perfect edge domination -------------------------------------------------------


def _forced_two_cover(g: Graph, w: WeightMap, black: int, gray: int) -> Solution | None:
    """Candidate when ``black``'s and ``gray``'s arcs cover the circle.

    ``gray``'s only non-white neighbor is ``black``, so its other neighbors
    are white; every remaining vertex meets ``black`` and cannot be white.
    """
    white = set(g.neighbors(gray)) - {black}
    colors = []
    for x in range(g.n):
        if x in white:
            colors.append(Color.WHITE)
        elif any(u in white for u in g.neighbors(x)):
            colors.append(Color.GRAY)
        else:
            colors.append(Color.BLACK)
    if colors[black] is not Color.BLACK or colors[gray] is not Color.GRAY:
        return None
    ok, _ = check_p1_p2(g, colors)
    if not ok:
        return None
    edges = [e for e in g.edges if e[0] not in white and e[1] not in white]
    return Solution.of(EDGE, edges, wsum(w[e] for e in edges), ("mwped/two-cover-forced",))


def _ped_clique_split(model: CircularArcModel, w: WeightMap) -> Solution:
    """A point is covered by ``q >= 4`` arcs: they are all black, so cut there.

    The duplicated clique edges keep their weight on the left copies and
    cost nothing on the right copies.
    """
    label = "mwped/clique-split"
    _, seg = _max_witness(model)
    clique = arcs_at(model, seg)
    cut_model, smap = cut_at(model, seg)
    gs = intersection_graph(cut_model)
    tags = smap.role_tags

    def rule(a, b):
        sa, sb = smap.source(a), smap.source(b)
        if sa in clique and sb in clique:
            if tags[a] != tags[b]:
                raise InternalInvariantError("pieces from opposite sides of the cut meet")
            return w[(sa, sb)] if tags[a] == LEFT_PART else Fraction(0)
        return w[(sa, sb)]

    sub = solve_mwped_interval(cut_model, _derived_edge_weights(gs, rule), gs)
    return _pull_edge_solution(sub, smap, w, label)


def _extended(model: CircularArcModel, w: WeightMap, placements, new_weight):
    """Insert arcs and price every edge touching them.

    ``new_weight`` is one value for all added arcs or a list with one value
    per placement; an edge between two added arcs takes the larger price.
    """
    new_model, imap = insert_arcs(model, placements)
    gn = intersection_graph(new_model)
    if not isinstance(new_weight, (list, tuple)):
        new_weight = [new_weight] * len(placements)
    price = dict(zip(imap.added, new_weight))

    def rule(a, b):
        if a in price or b in price:
            return max(price.get(a, -INF), price.get(b, -INF))
        return w[(a, b)]

    return new_model, _derived_edge_weights(gn, rule), imap


def _ped_triangle(model: CircularArcModel, w: WeightMap) -> Solution:
    """Largest coverage is 3: the triangle is all black or one white and two gray."""
    _, seg = _max_witness(model)
    tri = sorted(arcs_at(model, seg))
    candidates = []

    # all black: a fourth arc inside the segment turns the triangle into a K4
    plus_model, plus_w, imap = _extended(model, w, [Placement((seg, 0), (seg, 1))], Fraction(0))
    sub = _ped_clique_split(plus_model, plus_w)
    candidates.append(_pull_edge_solution(sub, imap, w, "mwped/triangle-black"))

    # one white: cut and forbid every triangle edge at the white vertex
    cut_model, smap = cut_at(model, seg)
    gs = intersection_graph(cut_model)
    tags = smap.role_tags
    for j, white in enumerate(tri):
        def rule(a, b, white=white):
            sa, sb = smap.source(a), smap.source(b)
            if sa in tri and sb in tri:
                if white in (sa, sb):
                    return INF
                return w[(sa, sb)] if tags[a] == LEFT_PART else Fraction(0)
            return w[(sa, sb)]

        sub = solve_mwped_interval(cut_model, _derived_edge_weights(gs, rule), gs)
        candidates.append(_pull_edge_solution(sub, smap, w, f"mwped/triangle-white-{j + 1}"))
    best = _best(candidates)
    return best if best is not None else Solution.infeasible(EDGE, ("mwped/triangle",))


def _ped_cycle(model: CircularArcModel, w: WeightMap) -> Solution:
    """Largest coverage 2: a cycle of arcs, possibly with pendant leaves."""
    cs = extract_cycle_structure(model)
    if not cs.pendants:
        return solve_cycle_dp("PED", cs, w).with_trace("mwped/cycle")
    k = len(cs.cycle)
    idx = next(i for i, x in enumerate(cs.cycle) if cs.leaves(x))
    mid = cs.cycle[idx]
    prev, nxt = cs.cycle[idx - 1], cs.cycle[(idx + 1) % k]
    size = model.grid_size
    prev_end = model.end(prev)
    next_start = model.start(nxt)
    candidates = []

    # the parent is black: two nested arcs over all its leaves force K4s
    inner = (next_start - 1) % size
    pair = [Placement((prev_end, 0), (inner, 1)), Placement((prev_end, 1), (inner, 0))]
    ext_model, ext_w, imap = _extended(model, w, pair, Fraction(0))
    sub = _ped_clique_split(ext_model, ext_w)
    candidates.append(_pull_edge_solution(sub, imap, w, "mwped/pendant-black"))

    # the parent is gray: pin its single non-white neighbor with a new arc
    leaf = min(cs.leaves(mid), key=lambda x: (w[(mid, x)], x))
    pins = [
        ("prev", Placement((model.start(mid), 0), (model.start(mid), 1))),
        ("next", Placement((next_start, 0), (next_start, 1))),
        ("leaf", Placement((model.start(leaf), 0), (model.end(leaf), 0))),
    ]
    for name, pin in pins:
        ext_model, ext_w, imap = _extended(model, w, [pin], INF)
        sub = _ped_triangle(ext_model, ext_w)
        candidates.append(_pull_edge_solution(sub, imap, w, f"mwped/pendant-gray-{name}"))

    # The pin above turns the chosen cycle neighbor gray as well, so a black
    # neighbor needs its own branch: three nested arcs where only that
    # neighbor lies make it part of a K4, and a white leaf keeps the parent gray.
    white_leaf = Placement((prev_end, 0), (prev_end, 1))
    for name, own in (("prev", model.end(cs.cycle[idx - 2])), ("next", model.end(mid))):
        nest = [Placement((own, r), (own, 5 - r)) for r in range(3)]
        ext_model, ext_w, imap = _extended(
            model, w, nest + [white_leaf], [Fraction(0)] * 3 + [INF]
        )
        sub = _ped_clique_split(ext_model, ext_w)
        candidates.append(_pull_edge_solution(sub, imap, w, f"mwped/pendant-gray-{name}-black"))
    best = _best(candidates)
    return best if best is not None else Solution.infeasible(EDGE, ("mwped/pendant",))


def solve_mwped(model: CircularArcModel, w: WeightMap, g: Graph | None = None) -> Solution:
    """Minimum-weight perfect edge dominating set; always feasible."""
    n = model.n
    if n == 0:
        return Solution.of(EDGE, (), Fraction(0), ("mwped/empty",))
    g = g or intersection_graph(model)
    if g.m == 0:
        return Solution.of(EDGE, (), Fraction(0), ("mwped/no-edges",))
    everything = Solution.of(EDGE, g.edges, wsum(w[e] for e in g.edges), ("mwped/all-edges",))
    candidates = [everything, solve_mweed(model, w, g).with_trace("mwped/dim")]
    pair = find_small_cover(model, 2)
    if pair is not None:
        path = "mwped/two-cover"
        a, b = sorted(pair)
        candidates.append(_forced_two_cover(g, w, a, b))
        candidates.append(_forced_two_cover(g, w, b, a))
    elif find_small_cover(model, 3) is not None:
        path = "mwped/three-cover"
    else:
        cmin, cmax, _, _ = coverage_extremes(model)
        if cmin == 0:
            path = "mwped/interval"
            candidates.append(solve_mwped_interval(model, w, g))
        elif cmax >= 4:
            path = "mwped/clique"
            candidates.append(_ped_clique_split(model, w))
        elif cmax == 3:
            path = "mwped/triangle"
            candidates.append(_ped_triangle(model, w))
        else:
            path = "mwped/cycle-with-leaves"
            candidates.append(_ped_cycle(model, w))
    best = _best(candidates)
    if best is None:
        raise InternalInvariantError("no perfect edge dominating set found, yet E always qualifies")
    return best.with_trace(path)


# -- facade -------------------------------------------------------------------------

_SOLVERS = {
    Problem.MWEVD: lambda m, w, g: solve_mwevd(m, w),
    Problem.MWEED: solve_mweed,
    Problem.MWPVD: solve_mwpvd,
    Problem.MWPED: solve_mwped,
}


def _has_negative(w: WeightMap) -> bool:
    if w.default is not None and w.default < 0:
        return True
    return any(x < 0 for x in w.values.values())


def solve(problem, model: CircularArcModel, weights: WeightMap | None = None, *, check: bool = False) -> Solution:
    """Solve ``problem`` on ``model``.

    ``weights`` defaults to unit weights of the right kind. Efficient
    variants reject negative weights. With ``check=True`` the answer is
    re-verified against the problem definition before it is returned.
    """
    problem = Problem(problem)
    if weights is None:
        weights = WeightMap.unit(problem.kind)
    if weights.kind != problem.kind:
        raise KindMismatch(f"{problem.value} needs {problem.kind} weights, got {weights.kind}")
    if problem in (Problem.MWEVD, Problem.MWEED) and _has_negative(weights):
        raise WeightSignViolation(f"{problem.value} requires nonnegative weights")
    sol = _SOLVERS[problem](model, weights, None)
    if check and sol.feasible:
        g = intersection_graph(model)
        ok, value, why = verify(problem, g, weights, sol.members)
        if not ok or value != sol.value:
            raise InternalInvariantError(f"self-check failed: {why or f'value {value} != {sol.value}'}")
    return sol
