"""Exact solvers used as building blocks by the circular-arc algorithms.

Most of them share one engine: vertices are introduced in a fixed order and
forgotten once their last neighbor has appeared, while a table maps the local
state of the still-alive vertices to the best partial weight. With the order
taken from an endpoint sweep of an arc model the alive set is a clique plus a
few wrapping arcs, which keeps the tables small on every call site.

The selected vertex set ``S`` is read per problem:

* dominating set / perfect / efficient vertex domination: ``S`` is the answer;
* dominating induced matching and perfect edge domination: ``S`` is the set
  of non-white vertices and the answer is the edge set induced by ``S``.
"""
from __future__ import annotations

import heapq
from bisect import bisect_left, bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

import numpy as np

from .arc_model import CircularArcModel, CycleStructure, arcs_at
from .errors import PreconditionViolated
from .graph_core import Graph, Solution, intersection_graph
from .weights import EDGE, INF, VERTEX, WeightMap, edge_key, wsum

# -- local rules -------------------------------------------------------------------
#
# Each rule maps a vertex to a small int code. ``interact`` is applied once per
# edge when its second endpoint is introduced and returns the updated pair or
# None when the partial assignment is already invalid.


class _Dominating:
    # 0 in S, 1 out and undominated, 2 out and dominated
    edge_weights = False

    @staticmethod
    def init(ins):
        return 0 if ins else 1

    @staticmethod
    def in_s(c):
        return c == 0

    @staticmethod
    def interact(a, b):
        if a == 0 and b != 0:
            b = 2
        elif b == 0 and a != 0:
            a = 2
        return a, b

    @staticmethod
    def final(c):
        return c != 1


class _Perfect:
    # 0 in S; 1 out with no S-neighbor yet; 2 out with exactly one
    edge_weights = False
    independent = False

    @staticmethod
    def init(ins):
        return 0 if ins else 1

    @staticmethod
    def in_s(c):
        return c == 0

    @classmethod
    def interact(cls, a, b):
        if a == 0:
            if b == 0:
                return None if cls.independent else (a, b)
            if b == 2:
                return None
            return a, 2
        if b == 0:
            if a == 2:
                return None
            return 2, b
        return a, b

    @staticmethod
    def final(c):
        return c != 1


class _Efficient(_Perfect):
    independent = True


class _InducedMatching:
    # 0 white; 1 black, unmatched so far; 2 black, matched
    edge_weights = True

    @staticmethod
    def init(ins):
        return 1 if ins else 0

    @staticmethod
    def in_s(c):
        return c != 0

    @staticmethod
    def interact(a, b):
        if a == 0 and b == 0:
            return None
        if a and b:
            if a == 2 or b == 2:
                return None
            return 2, 2
        return a, b

    @staticmethod
    def final(c):
        return c != 1


class _PerfectEdge:
    # 0 white; otherwise 1 + c + 3*h with c = non-white neighbors (capped at 2)
    # and h = has a white neighbor. A non-white vertex with a white neighbor is
    # gray and needs exactly one non-white neighbor.
    edge_weights = True

    @staticmethod
    def init(ins):
        return 1 if ins else 0

    @staticmethod
    def in_s(c):
        return c != 0

    @staticmethod
    def _bump(c):
        h, k = divmod(c - 1, 3)
        k = min(k + 1, 2)
        if h and k == 2:
            return None
        return 1 + k + 3 * h

    @staticmethod
    def _whiten(c):
        k = (c - 1) % 3
        if k == 2:
            return None
        return 1 + k + 3

    @classmethod
    def interact(cls, a, b):
        if a == 0 and b == 0:
            return None
        if a and b:
            a2 = cls._bump(a)
            b2 = cls._bump(b)
            if a2 is None or b2 is None:
                return None
            return a2, b2
        if a:
            a2 = cls._whiten(a)
            return None if a2 is None else (a2, b)
        b2 = cls._whiten(b)
        return None if b2 is None else (a, b2)

    @staticmethod
    def final(c):
        if c == 0:
            return True
        k, h = (c - 1) % 3, (c - 1) // 3
        return not h or k == 1


RULES = {
    "DS": _Dominating,
    "PVD": _Perfect,
    "EVD": _Efficient,
    "DIM": _InducedMatching,
    "PED": _PerfectEdge,
}


def order_dp(g: Graph, order, rule: str, weights: WeightMap, forced=None):
    """Exact optimum of ``rule`` on ``g`` by dynamic programming along ``order``.

    ``forced`` maps a vertex to ``True`` (must be in S) or ``False`` (must
    not). Returns ``(value, S)`` for the best assignment, or ``None`` when no
    assignment satisfies the rule. ``value`` may be ``inf``.
    """
    spec = RULES[rule]
    forced = forced or {}
    order = list(order)
    if sorted(order) != list(range(g.n)):
        raise ValueError("order must list every vertex exactly once")
    pos = {v: i for i, v in enumerate(order)}
    forget_at = [[] for _ in order]
    for v in order:
        last = pos[v]
        for u in g.neighbors(v):
            last = max(last, pos[u])
        forget_at[last].append(v)

    alive: list[int] = []
    table = {(): (Fraction(0), None)}
    edge_w = spec.edge_weights
    for i, v in enumerate(order):
        nbr_idx = [k for k, u in enumerate(alive) if g.has_edge(u, v)]
        if v in forced:
            choices = (bool(forced[v]),)
        else:
            choices = (False, True)
        vw = None if edge_w else weights[v]
        nw = [weights[edge_key(alive[k], v)] for k in nbr_idx] if edge_w else None
        after = alive + [v]
        drop = set(forget_at[i])
        keep_idx = [k for k, u in enumerate(after) if u not in drop]
        drop_idx = [k for k, u in enumerate(after) if u in drop]
        new_table = {}
        for key, (val, cons) in table.items():
            for ins in choices:
                codes = list(key)
                cv = spec.init(ins)
                add = vw if (ins and not edge_w) else 0
                ok = True
                for slot, k in enumerate(nbr_idx):
                    res = spec.interact(codes[k], cv)
                    if res is None:
                        ok = False
                        break
                    codes[k], cv = res
                    if edge_w and ins and spec.in_s(codes[k]):
                        add = add + nw[slot]
                if not ok:
                    continue
                codes.append(cv)
                if any(not spec.final(codes[k]) for k in drop_idx):
                    continue
                nkey = tuple(codes[k] for k in keep_idx)
                nval = val + add
                old = new_table.get(nkey)
                if old is None or nval < old[0]:
                    new_table[nkey] = (nval, (v, cons) if ins else cons)
        alive = [after[k] for k in keep_idx]
        table = new_table
        if not table:
            return None
    assert not alive
    best = table.get(())
    if best is None:
        return None
    val, cons = best
    chosen = []
    while cons is not None:
        chosen.append(cons[0])
        cons = cons[1]
    return val, sorted(chosen)


def _to_solution(result, rule: str, g: Graph, trace=()) -> Solution:
    kind = EDGE if RULES[rule].edge_weights else VERTEX
    if result is None or result[0] == INF:
        return Solution.infeasible(kind, trace)
    val, chosen = result
    members = g.induced_edges(chosen) if kind == EDGE else chosen
    return Solution.of(kind, members, val, trace)


def sweep_order(model: CircularArcModel, cut: int | None = None) -> list[int]:
    """Arcs in the order a clockwise sweep from segment ``cut`` meets them.

    Arcs over the starting segment come first (by id), then the others by
    start position. Defaults to the first segment of minimum coverage.
    """
    if model.n == 0:
        return []
    size = model.grid_size
    if cut is None:
        cut = int(np.argmin(model.coverage))
    first = sorted(arcs_at(model, cut))
    seen = set(first)
    order = list(first)
    owner = model.owner
    flags = model.is_start
    for d in range(1, size + 1):
        pos = (cut + d) % size
        if flags[pos]:
            a = int(owner[pos])
            if a not in seen:
                seen.add(a)
                order.append(a)
    return order


def _require_interval(model: CircularArcModel):
    if model.n and int(model.coverage.min()) != 0:
        raise PreconditionViolated("model is not an interval model (no uncovered point)")


# -- solvers on models ---------------------------------------------------------------


def solve_mwds_ca(model: CircularArcModel, w: WeightMap, g: Graph | None = None) -> Solution:
    """Minimum-weight dominating set of the intersection graph (any signs)."""
    g = g or intersection_graph(model)
    res = order_dp(g, sweep_order(model), "DS", w)
    return _to_solution(res, "DS", g)


def solve_mwpvd_interval(model: CircularArcModel, w: WeightMap, g: Graph | None = None) -> Solution:
    """Minimum-weight perfect dominating set on an interval model.

    Vertices of weight ``inf`` may only appear if no finite solution exists,
    in which case the result is infeasible.
    """
    _require_interval(model)
    g = g or intersection_graph(model)
    res = order_dp(g, sweep_order(model), "PVD", w)
    return _to_solution(res, "PVD", g)


FREE = "FREE"
WHITE = "WHITE"
BLACK_ANY = "BLACK_ANY"
BLACK_MATCHED_TO = "BLACK_MATCHED_TO"


@dataclass(frozen=True)
class Precoloring:
    """Per-vertex constraints; ``matched`` maps a vertex to its forced partner."""

    fixed: dict = field(default_factory=dict)  # vertex -> WHITE | BLACK_ANY
    matched: dict = field(default_factory=dict)  # vertex -> partner

    def constraint(self, v: int):
        if v in self.matched:
            return (BLACK_MATCHED_TO, self.matched[v])
        return self.fixed.get(v, FREE)

    def validate(self, g: Graph):
        for v, u in self.matched.items():
            if not g.has_edge(u, v):
                raise PreconditionViolated(f"v{v + 1} matched to non-neighbor v{u + 1}")
            back = self.constraint(u)
            if back == WHITE or (isinstance(back, tuple) and back[1] != v):
                raise PreconditionViolated(f"inconsistent matching constraint at v{u + 1}")
            for x in g.neighbors(v):
                if x != u and self.matched.get(x) is not None and x in self.matched and self.matched[x] == v:
                    raise PreconditionViolated(f"v{v + 1} matched twice")

    def forced(self, g: Graph) -> dict:
        """Membership constraints implied for the black set."""
        out = {}
        for v, c in self.fixed.items():
            if c == WHITE:
                out[v] = False
            elif c == BLACK_ANY:
                out[v] = True
        for v, u in self.matched.items():
            out[v] = True
            out[u] = True
            # v's other neighbors cannot be black: v would get a second partner
            for x in g.neighbors(v):
                if x != u:
                    if out.get(x) is True:
                        raise PreconditionViolated(f"v{x + 1} both white and black")
                    out[x] = False
        return out


def solve_dim_interval(
    model: CircularArcModel,
    w: WeightMap,
    pre: Precoloring | None = None,
    g: Graph | None = None,
) -> Solution:
    """Minimum-weight dominating induced matching on an interval model."""
    _require_interval(model)
    g = g or intersection_graph(model)
    forced = None
    if pre is not None:
        pre.validate(g)
        try:
            forced = pre.forced(g)
        except PreconditionViolated:
            return Solution.infeasible(EDGE)
    res = order_dp(g, sweep_order(model), "DIM", w, forced)
    return _to_solution(res, "DIM", g)


def solve_mwped_interval(model: CircularArcModel, w: WeightMap, g: Graph | None = None) -> Solution:
    """Minimum-weight perfect edge dominating set on an interval model.

    Infeasible only when every perfect edge dominating set uses an edge of
    weight ``inf``.
    """
    _require_interval(model)
    g = g or intersection_graph(model)
    res = order_dp(g, sweep_order(model), "PED", w)
    return _to_solution(res, "PED", g)


def solve_dim_fixed_domset(g: Graph, w: WeightMap, dom, model: CircularArcModel | None = None) -> Solution:
    """Minimum-weight dominating induced matching given a dominating set of size <= 3.

    Each vertex of ``dom`` is either white or matched to one of its
    neighbors. A white vertex forces its neighbors black; a matched one
    forces its partner black and its other neighbors white. Since ``dom``
    dominates, one branch colors the whole graph and only needs checking.
    """
    dom = sorted(set(dom))
    if len(dom) > 3:
        raise PreconditionViolated("dominating set larger than 3")
    covered = set(dom)
    for d in dom:
        covered.update(g.neighbors(d))
    if len(covered) != g.n:
        raise PreconditionViolated("given set does not dominate the graph")
    if model is not None:
        for d in dom:
            if not 0 <= d < model.n:
                raise PreconditionViolated(f"v{d + 1} is not an arc of the model")
    options = [[None] + list(g.neighbors(d)) for d in dom]
    best = None
    for combo in product(*options):
        color = {}
        ok = True

        def paint(v, c):
            nonlocal ok
            old = color.get(v)
            if old is None:
                color[v] = c
            elif old != c:
                ok = False

        for d, partner in zip(dom, combo):
            if partner is None:
                paint(d, False)
                for u in g.neighbors(d):
                    paint(u, True)
            else:
                paint(d, True)
                paint(partner, True)
                for u in g.neighbors(d):
                    if u != partner:
                        paint(u, False)
            if not ok:
                break
        if not ok or len(color) != g.n:
            continue
        black = [v for v in range(g.n) if color[v]]
        if any(sum(1 for u in g.neighbors(v) if color[u]) != 1 for v in black):
            continue
        if any(not color[u] for v in range(g.n) if not color[v] for u in g.neighbors(v)):
            continue
        edges = g.induced_edges(black)
        val = wsum(w[e] for e in edges)
        if val == INF:
            continue
        key = (val, tuple(edges))
        if best is None or key < best:
            best = key
    if best is None:
        return Solution.infeasible(EDGE)
    return Solution.of(EDGE, best[1], best[0])


_CYCLE_RULES = {"DIM": "DIM", "PED": "PED", "EVD": "EVD", "PVD": "PVD"}


def cycle_graph(cs: CycleStructure) -> tuple[Graph, list[int]]:
    """Graph of a cycle with pendants on local ids; returns it with the id list."""
    ids = cs.vertices
    local = {v: k for k, v in enumerate(ids)}
    k = len(cs.cycle)
    edges = [(local[cs.cycle[i]], local[cs.cycle[(i + 1) % k]]) for i in range(k)]
    for p in cs.cycle:
        for leaf in cs.leaves(p):
            edges.append((local[p], local[leaf]))
    return Graph(len(ids), edges), ids


def solve_cycle_dp(problem: str, cs: CycleStructure, w: WeightMap) -> Solution:
    """Exact optimum on a cycle with pendant leaves.

    Vertices are taken around the cycle, each followed by its leaves; the
    first cycle vertex stays in the table until the last one closes the loop.
    ``problem`` is one of ``DIM``, ``PED``, ``EVD``, ``PVD``.
    """
    if problem not in _CYCLE_RULES:
        raise ValueError(f"unknown cycle problem {problem!r}")
    if len(cs.cycle) < 3:
        raise PreconditionViolated("cycle needs at least 3 vertices")
    g, ids = cycle_graph(cs)
    rule = _CYCLE_RULES[problem]
    if RULES[rule].edge_weights:
        lw = WeightMap.edge({(a, b): w[(ids[a], ids[b])] for a, b in g.edges})
    else:
        lw = WeightMap.vertex({k: w[v] for k, v in enumerate(ids)})
    res = order_dp(g, range(g.n), rule, lw)
    kind = EDGE if RULES[rule].edge_weights else VERTEX
    if res is None or res[0] == INF:
        return Solution.infeasible(kind)
    val, chosen = res
    if kind == EDGE:
        members = [(ids[a], ids[b]) for a, b in g.induced_edges(chosen)]
    else:
        members = [ids[c] for c in chosen]
    return Solution.of(kind, members, val)


# -- efficient domination by a sweep over disjoint arcs ------------------------------


def efficient_transitions(model: CircularArcModel):
    """Successor lists for the efficient-domination sweep.

    In an efficient dominating set the chosen arcs are pairwise disjoint, so
    they follow each other around the circle. Between consecutive chosen arcs
    ``D`` and ``D'`` no arc may fit in the closed gap (it would be
    undominated) and no arc may span the gap (it would meet both). Returns
    ``(single, succ)``: arcs that alone form an efficient dominating set, and
    for every arc the list of ``(advance, next_arc)`` with the clockwise
    distance between their starts.
    """
    n = model.n
    size = model.grid_size
    un = model._unrolled
    starts = un.starts
    lengths = un.lengths
    owner = model.owner
    all_starts = np.sort(np.concatenate([starts + c * size for c in range(un.COPIES)]))
    all_starts_list = all_starts.tolist()
    pref_max = un.pref_max
    suf_min = un.suf_min
    single = []
    succ = [[] for _ in range(n)]
    for d in range(n):
        a = int(starts[d]) + size
        x = a + int(lengths[d])
        nxt_self = a + size
        hi = int(suf_min[x])
        if hi > nxt_self:
            single.append(d)
        lo = max(x, int(pref_max[x]))
        top = min(hi, nxt_self)
        if lo >= top:
            continue
        first = bisect_right(all_starts_list, lo)
        last = bisect_left(all_starts_list, top)
        for sigma in all_starts_list[first:last]:
            j = int(owner[sigma % size])
            if sigma + int(lengths[j]) < nxt_self:
                succ[d].append((sigma - a, j))
    return single, succ


def solve_efficient_sweep(model: CircularArcModel, w: WeightMap) -> Solution:
    """Minimum-weight efficient dominating set straight from the model.

    Runs in time proportional to the number of admissible successor pairs
    times the number of them crossing the least-crossed slot; weights may have
    any sign.
    """
    n = model.n
    if n == 0:
        return Solution.of(VERTEX, (), Fraction(0))
    size = model.grid_size
    single, succ = efficient_transitions(model)
    owner = model.owner
    best = None

    def offer(val, members):
        nonlocal best
        if val == INF:
            return
        key = (val, tuple(sorted(members)))
        if best is None or key < best:
            best = key

    for d in single:
        offer(w[d], [d])

    starts = [model.start(d) for d in range(n)]
    diff = np.zeros(size + 1, dtype=np.int64)
    total = 0
    for d in range(n):
        s = starts[d]
        for adv, _ in succ[d]:
            total += 1
            end = s + adv
            if end <= size:
                diff[s] += 1
                diff[end] -= 1
            else:
                diff[s] += 1
                diff[size] -= 1
                diff[0] += 1
                diff[end - size] -= 1
    if total:
        crossing = np.cumsum(diff[:size])
        ref = int(np.argmin(crossing))
        if crossing[ref] > 0:
            for d in range(n):
                s = starts[d]
                r = ref if ref >= s else ref + size
                for adv, j in succ[d]:
                    if r < s + adv:
                        res = _close_cycle(d, s, adv, j, succ, owner, size, w)
                        if res is not None:
                            offer(*res)
    if best is None:
        return Solution.infeasible(VERTEX)
    return Solution.of(VERTEX, best[1], best[0])


def _close_cycle(d, a0, adv0, j, succ, owner, size, w):
    """Cheapest chain from ``j`` (at ``a0 + adv0``) back to ``d`` one turn later."""
    sigma0 = a0 + adv0
    target = a0 + size
    dist = {sigma0: w[j]}
    parent = {sigma0: None}
    heap = [sigma0]
    done = set()
    while heap:
        b = heapq.heappop(heap)
        if b in done:
            continue
        done.add(b)
        if b == target:
            break
        arc = int(owner[b % size])
        base = dist[b]
        for adv, nxt in succ[arc]:
            b2 = b + adv
            if b2 > target:
                continue
            val = base + w[nxt]
            old = dist.get(b2)
            if old is None:
                heapq.heappush(heap, b2)
            if old is None or val < old:
                dist[b2] = val
                parent[b2] = b
    if target not in dist:
        return None
    members = []
    b = target
    while b is not None:
        members.append(int(owner[b % size]))
        b = parent[b]
    return dist[target], members
