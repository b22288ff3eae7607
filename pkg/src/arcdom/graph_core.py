"""Graphs derived from models, solution checking and the black/gray/white coloring."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import UnknownId
from .weights import EDGE, INF, VERTEX, Weight, WeightMap, edge_key, wsum


class Problem(str, enum.Enum):
    MWEVD = "mwevd"
    MWEED = "mweed"
    MWPVD = "mwpvd"
    MWPED = "mwped"

    @property
    def kind(self) -> str:
        return EDGE if self in (Problem.MWEED, Problem.MWPED) else VERTEX


class Color(str, enum.Enum):
    BLACK = "BLACK"
    GRAY = "GRAY"
    WHITE = "WHITE"


class Graph:
    """Simple undirected graph on vertices ``0 .. n-1`` with sorted adjacency."""

    def __init__(self, vertex_count: int, edges: Iterable[Sequence[int]] = ()):
        n = int(vertex_count)
        es = set()
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise UnknownId(f"edge ({u}, {v}) outside 0..{n - 1}")
            es.add(edge_key(u, v))
        nbrs = [[] for _ in range(n)]
        for u, v in es:
            nbrs[u].append(v)
            nbrs[v].append(u)
        self.vertex_count = n
        self.adjacency = tuple(tuple(sorted(a)) for a in nbrs)
        self.edges = tuple(sorted(es))
        self.edge_id = {e: k for k, e in enumerate(self.edges)}
        self._nsets = [frozenset(a) for a in self.adjacency]

    @property
    def n(self) -> int:
        return self.vertex_count

    @property
    def m(self) -> int:
        return len(self.edges)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def neighbor_set(self, v: int) -> frozenset[int]:
        return self._nsets[v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._nsets[u]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def induced_edges(self, vertices: Iterable[int]) -> list[tuple[int, int]]:
        vs = set(vertices)
        return [e for e in self.edges if e[0] in vs and e[1] in vs]

    def __eq__(self, other):
        return (
            isinstance(other, Graph)
            and self.vertex_count == other.vertex_count
            and self.edges == other.edges
        )

    def __repr__(self):
        return f"Graph({self.vertex_count}, {list(self.edges)!r})"


def intersection_graph(model) -> Graph:
    """Vertex ``i`` for arc ``i``; an edge whenever two open arcs meet."""
    n = model.n
    size = model.grid_size
    owner = model.owner
    flags = model.is_start
    edges = []
    for i, (s, t) in enumerate(model.pairs):
        length = (t - s) % size
        for d in range(1, length):
            pos = (s + d) % size
            if flags[pos]:
                edges.append((i, int(owner[pos])))
    return Graph(n, edges)


def line_graph(g: Graph) -> tuple[Graph, dict[tuple[int, int], int]]:
    index = {e: k for k, e in enumerate(g.edges)}
    lg_edges = []
    for v in range(g.n):
        inc = [index[edge_key(v, u)] for u in g.neighbors(v)]
        for a in range(len(inc)):
            for b in range(a + 1, len(inc)):
                lg_edges.append((inc[a], inc[b]))
    return Graph(len(g.edges), lg_edges), index


def connected_components(g: Graph, removed: Iterable[int] = ()) -> list[frozenset[int]]:
    """Components of ``g`` minus ``removed``, ordered by least vertex."""
    gone = set(removed)
    seen = set(gone)
    comps = []
    for root in range(g.n):
        if root in seen:
            continue
        seen.add(root)
        stack = [root]
        comp = [root]
        while stack:
            v = stack.pop()
            for u in g.neighbors(v):
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
                    comp.append(u)
        comps.append(frozenset(comp))
    return comps


def k4_free_edge_bound(g: Graph) -> bool:
    """``m <= 2n``; necessary for a K4-free circular-arc graph."""
    return g.m <= 2 * g.n


# -- solutions ---------------------------------------------------------------------


@dataclass(frozen=True)
class Solution:
    feasible: bool
    kind: str
    members: tuple = ()
    value: Weight = INF
    trace: tuple[str, ...] = field(default=())

    def __post_init__(self):
        if not self.feasible and (self.members or self.value != INF):
            raise ValueError("an infeasible solution carries no members and value inf")

    @classmethod
    def infeasible(cls, kind: str, trace=()) -> "Solution":
        return cls(False, kind, (), INF, tuple(trace))

    @classmethod
    def of(cls, kind: str, members, value, trace=()) -> "Solution":
        if kind == EDGE:
            members = tuple(sorted(edge_key(*e) for e in members))
        else:
            members = tuple(sorted(members))
        return cls(True, kind, members, value, tuple(trace))

    def with_trace(self, *labels: str) -> "Solution":
        return Solution(self.feasible, self.kind, self.members, self.value, tuple(labels) + self.trace)


# -- verification ---------------------------------------------------------------


def _check_vertices(g: Graph, candidate) -> set[int]:
    vs = set()
    for v in candidate:
        if not isinstance(v, int) or not 0 <= v < g.n:
            raise UnknownId(f"vertex {v!r} not in graph")
        vs.add(v)
    return vs


def _check_edges(g: Graph, candidate) -> set[tuple[int, int]]:
    es = set()
    for e in candidate:
        u, v = e
        key = edge_key(u, v)
        if key not in g.edge_id:
            raise UnknownId(f"edge {e!r} not in graph")
        es.add(key)
    return es


def verify(problem, g: Graph, w: WeightMap, candidate):
    """Check ``candidate`` against the definition of ``problem``.

    Returns ``(feasible, value, violation)``; ``value`` is the weight sum
    (``inf`` when infeasible) and ``violation`` a short reason or ``None``.
    """
    problem = Problem(problem)
    if problem.kind == VERTEX:
        chosen = _check_vertices(g, candidate)
        if problem is Problem.MWEVD:
            for v in sorted(chosen):
                for u in g.neighbors(v):
                    if u in chosen:
                        return False, INF, f"v{v + 1} and v{u + 1} are adjacent"
        for v in range(g.n):
            if v in chosen:
                continue
            hits = sum(1 for u in g.neighbors(v) if u in chosen)
            if hits != 1:
                word = "undominated" if hits == 0 else f"dominated {_times(hits)}"
                return False, INF, f"v{v + 1} {word}"
        return True, wsum(w[v] for v in sorted(chosen)), None

    chosen_e = _check_edges(g, candidate)
    touched = {}
    for u, v in chosen_e:
        touched[u] = touched.get(u, 0) + 1
        touched[v] = touched.get(v, 0) + 1
    if problem is Problem.MWEED:
        for v, c in touched.items():
            if c > 1:
                return False, INF, f"v{v + 1} covered by {c} matching edges"
    # for MWEED this also forces the matching to be induced
    for e in g.edges:
        u, v = e
        if e in chosen_e:
            continue
        hits = touched.get(u, 0) + touched.get(v, 0)
        if hits != 1:
            word = "undominated" if hits == 0 else f"dominated {_times(hits)}"
            return False, INF, f"edge (v{u + 1}, v{v + 1}) {word}"
    return True, wsum(w[e] for e in sorted(chosen_e)), None


def _times(k: int) -> str:
    return "twice" if k == 2 else f"{k} times"


# -- black / gray / white coloring ----------------------------------------------------


def coloring_of(g: Graph, dominating_edges) -> tuple[Color, ...]:
    """Color induced by an edge set: touched vertices with closed neighborhood
    inside the touched set are black, other touched ones gray, the rest white."""
    es = _check_edges(g, dominating_edges)
    touched = set()
    for u, v in es:
        touched.add(u)
        touched.add(v)
    colors = []
    for v in range(g.n):
        if v not in touched:
            colors.append(Color.WHITE)
        elif all(u in touched for u in g.neighbors(v)):
            colors.append(Color.BLACK)
        else:
            colors.append(Color.GRAY)
    return tuple(colors)


def check_p1_p2(g: Graph, colors: Sequence[Color]):
    """Every gray vertex has exactly one non-white neighbor (P1) and every
    white vertex has only gray neighbors (P2). Returns ``(ok, violation)``."""
    for v in range(g.n):
        c = colors[v]
        if c is Color.GRAY:
            nonwhite = [u for u in g.neighbors(v) if colors[u] is not Color.WHITE]
            if len(nonwhite) != 1:
                return False, f"P1: gray v{v + 1} has {len(nonwhite)} non-white neighbors"
        elif c is Color.WHITE:
            for u in g.neighbors(v):
                if colors[u] is not Color.GRAY:
                    return False, f"P2: white v{v + 1} has {colors[u].value.lower()} neighbor v{u + 1}"
    return True, None


def edges_of_coloring(g: Graph, colors: Sequence[Color]) -> list[tuple[int, int]]:
    """Edges with both ends non-white."""
    return [e for e in g.edges if colors[e[0]] is not Color.WHITE and colors[e[1]] is not Color.WHITE]
