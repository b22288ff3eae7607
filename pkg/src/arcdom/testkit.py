"""Instance generators, a brute-force oracle and a differential runner.

Everything here is deterministic: the same :class:`GenSpec` always yields the
same instance, and :func:`differential_run` reproduces byte-identical reports
for the same arguments.
"""
from __future__ import annotations

import enum
import time
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .arc_model import CircularArcModel, find_small_cover, normalize_model
from .errors import InvalidSpec, TooLarge
from .graph_core import Graph, Problem, Solution, intersection_graph
from .weights import EDGE, INF, VERTEX, WeightMap, format_weight

ORACLE_LIMIT = 20


class Family(str, enum.Enum):
    RANDOM = "random"
    CYCLE = "cycle"
    INTERVAL = "interval"
    STAR = "star"
    OCTAHEDRON = "octahedron"
    COVER2 = "cover2"
    COVER3 = "cover3"
    SHORT = "short"
    LEAFY_CYCLE = "leafy-cycle"
    RING = "ring"


class WeightSpec(str, enum.Enum):
    UNIT = "unit"
    RANDOM_NONNEG = "nonneg"
    RANDOM_SIGNED = "signed"


@dataclass(frozen=True)
class GenSpec:
    """Recipe for one instance.

    Random weights are ``p/q`` with ``p`` in ``[lo, hi]`` (``lo`` is clamped to
    zero for nonnegative weights) and ``q`` in ``1 .. max_den``.
    """

    seed: int
    n: int
    family: Family = Family.RANDOM
    weight_spec: WeightSpec = WeightSpec.UNIT
    kind: str = VERTEX
    lo: int = -9
    hi: int = 9
    max_den: int = 4

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        object.__setattr__(self, "weight_spec", WeightSpec(self.weight_spec))
        if self.kind not in (VERTEX, EDGE):
            raise InvalidSpec(f"unknown weight kind {self.kind!r}")
        if self.n < 1:
            raise InvalidSpec("n must be at least 1")
        if self.max_den < 1 or self.lo > self.hi:
            raise InvalidSpec("empty weight range")


OCTAHEDRON_PAIRS = ((0, 5), (6, 11), (2, 7), (8, 1), (4, 9), (10, 3))


def _rng(*seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([int(s) % 2**63 for s in seed])))


def _random_pairing(rng, n: int) -> CircularArcModel:
    perm = rng.permutation(2 * n).tolist()
    return CircularArcModel([(perm[2 * i], perm[2 * i + 1]) for i in range(n)])


def _scattered(rng, n: int, circle: int, lengths) -> CircularArcModel:
    """Arcs with given raw lengths at random distinct raw start points."""
    starts = rng.choice(circle, size=n, replace=False).tolist()
    return normalize_model([(s, (s + ln) % circle) for s, ln in zip(starts, lengths)])


def _model(spec: GenSpec, rng) -> CircularArcModel:
    n, fam = spec.n, spec.family
    if fam is Family.RANDOM:
        return _random_pairing(rng, n)
    if fam is Family.CYCLE:
        return CircularArcModel([(2 * i, (2 * i + 3) % (2 * n)) for i in range(n)])
    if fam is Family.INTERVAL:
        perm = rng.permutation(2 * n).tolist()
        return CircularArcModel(
            [(min(perm[2 * i], perm[2 * i + 1]), max(perm[2 * i], perm[2 * i + 1])) for i in range(n)]
        )
    if fam is Family.STAR:
        return CircularArcModel([(0, 2 * n - 1)] + [(2 * i - 1, 2 * i) for i in range(1, n)])
    if fam is Family.OCTAHEDRON:
        if n != 6:
            raise InvalidSpec("the octahedron family has exactly 6 arcs")
        return CircularArcModel(OCTAHEDRON_PAIRS)
    if fam is Family.SHORT:
        # no three arcs of length <= 30 cover a circle of 100
        circle = max(100, 4 * n)
        return _scattered(rng, n, circle, rng.integers(1, circle * 3 // 10 + 1, size=n).tolist())
    if fam is Family.COVER2:
        if n < 2:
            raise InvalidSpec("a 2-cover needs two arcs")
        for _ in range(1000):
            model = _random_pairing(rng, n)
            if find_small_cover(model, 2) is not None:
                return model
        raise InvalidSpec(f"no 2-cover model found for n={n}")
    if fam is Family.COVER3:
        if n < 3:
            raise InvalidSpec("a 3-cover without a 2-cover needs three arcs")
        circle = 60 * n + 120
        third = circle // 3
        base = [(0, third + 5), (third, 2 * third + 5), (2 * third, 5)]
        taken = {p for a in base for p in a}
        free = np.array([p for p in range(circle) if p not in taken])
        starts = rng.choice(free, size=n - 3, replace=False).tolist()
        lengths = rng.integers(1, third, size=n - 3).tolist()
        extra = [(s, (s + ln) % circle) for s, ln in zip(starts, lengths)]
        return normalize_model(_shuffle(rng, base + extra))
    if fam is Family.LEAFY_CYCLE:
        return _leafy_cycle(rng, n)
    if fam is Family.RING:
        return _ring(rng, n)
    raise InvalidSpec(f"unknown family {fam!r}")  # pragma: no cover


def _shuffle(rng, items):
    order = rng.permutation(len(items)).tolist()
    return [items[k] for k in order]


def _leafy_cycle(rng, n: int) -> CircularArcModel:
    """A chordless cycle of ``k >= 4`` arcs with the remaining ``n - k`` arcs as
    leaves nested in the private stretches of cycle arcs (coverage <= 2)."""
    if n < 4:
        raise InvalidSpec("a leafy cycle needs at least four arcs")
    k = int(rng.integers(4, n + 1))
    span, overlap = 100 + 4 * n, 10
    circle = k * span
    arcs = [(i * span - overlap) % circle for i in range(k)]
    arcs = [(s, (s + span + 2 * overlap) % circle) for s in arcs]
    hosts = rng.integers(0, k, size=n - k).tolist()
    per_host: dict[int, int] = {}
    for h in hosts:
        per_host[h] = per_host.get(h, 0) + 1
    leaves = []
    for h in sorted(per_host):
        lo = h * span + overlap + 1
        room = span - 2 * overlap - 2
        cuts = sorted(rng.choice(room, size=2 * per_host[h], replace=False).tolist())
        leaves += [(lo + cuts[2 * j], lo + cuts[2 * j + 1]) for j in range(per_host[h])]
    return normalize_model(_shuffle(rng, arcs + leaves))


def _ring(rng, n: int) -> CircularArcModel:
    """Arcs spread evenly around the circle, 1.2 to 2.8 spacings long.

    Resampled until every segment is covered and no three arcs cover the
    circle, so the model needs neither an interval nor a small-cover case.
    """
    if n < 4:
        raise InvalidSpec("a ring needs at least four arcs")
    spacing = 40
    circle = n * spacing
    for _ in range(1000):
        jitter = rng.integers(-spacing // 4, spacing // 4 + 1, size=n).tolist()
        lengths = rng.integers(spacing * 6 // 5, spacing * 14 // 5 + 1, size=n).tolist()
        starts = [(i * spacing + j) % circle for i, j in enumerate(jitter)]
        model = normalize_model(_shuffle(rng, [(s, (s + ln) % circle) for s, ln in zip(starts, lengths)]))
        if int(model.coverage.min()) >= 1 and find_small_cover(model, 3) is None:
            return model
    raise InvalidSpec(f"no ring model found for n={n}")


def _weights(spec: GenSpec, model: CircularArcModel, rng) -> WeightMap:
    # the graph is only built for edge weights; it can be quadratic in n
    keys = list(range(model.n)) if spec.kind == VERTEX else list(intersection_graph(model).edges)
    if spec.weight_spec is WeightSpec.UNIT:
        return WeightMap(spec.kind, {k: Fraction(1) for k in keys})
    lo = max(spec.lo, 0) if spec.weight_spec is WeightSpec.RANDOM_NONNEG else spec.lo
    if lo > spec.hi:
        raise InvalidSpec("empty nonnegative weight range")
    nums = rng.integers(lo, spec.hi + 1, size=len(keys)).tolist()
    dens = rng.integers(1, spec.max_den + 1, size=len(keys)).tolist()
    return WeightMap(spec.kind, {k: Fraction(p, q) for k, p, q in zip(keys, nums, dens)})


def generate(spec: GenSpec) -> tuple[CircularArcModel, WeightMap]:
    rng = _rng(spec.seed, spec.n, list(Family).index(spec.family))
    model = _model(spec, rng)
    return model, _weights(spec, model, rng)


# -- oracle ----------------------------------------------------------------------


def _masks(g: Graph) -> list[int]:
    out = []
    for v in range(g.n):
        m = 0
        for u in g.neighbors(v):
            m |= 1 << u
        out.append(m)
    return out


def _members(mask: int, n: int) -> tuple[int, ...]:
    return tuple(v for v in range(n) if mask >> v & 1)


def enumerate_feasible(problem, g: Graph):
    """Yield every feasible member tuple (sorted) of ``problem`` on ``g``.

    Vertex problems run over all vertex subsets. Edge problems run over the
    induced edge sets ``E[S]``; every perfect edge dominating set equals
    ``E[V(F)]``, so nothing is missed, and repeats are dropped.
    """
    problem = Problem(problem)
    n = g.n
    nb = _masks(g)
    if problem.kind == VERTEX:
        efficient = problem is Problem.MWEVD
        for s in range(1 << n):
            ok = True
            for v in range(n):
                hits = nb[v] & s
                if s >> v & 1:
                    if efficient and hits:
                        ok = False
                        break
                elif hits == 0 or hits & (hits - 1):
                    ok = False
                    break
            if ok:
                yield _members(s, n)
        return
    seen = set()
    matching = problem is Problem.MWEED
    for s in range(1 << n):
        deg = [(nb[v] & s).bit_count() if s >> v & 1 else 0 for v in range(n)]
        if matching and max(deg, default=0) > 1:
            continue
        ok = True
        for u, v in g.edges:
            if s >> u & 1 and s >> v & 1:
                continue
            if deg[u] + deg[v] != 1:
                ok = False
                break
        if not ok:
            continue
        chosen = tuple((u, v) for u, v in g.edges if s >> u & 1 and s >> v & 1)
        if chosen not in seen:
            seen.add(chosen)
            yield chosen


def oracle_solve(problem, g: Graph, w: WeightMap) -> Solution:
    """Exhaustive optimum; ties go to the smaller, then lexicographically first set.

    Sets of infinite weight do not count as solutions.
    """
    problem = Problem(problem)
    if g.n > ORACLE_LIMIT:
        raise TooLarge(f"oracle limited to {ORACLE_LIMIT} vertices, got {g.n}")
    best = None
    for members in enumerate_feasible(problem, g):
        value = w.total(members)
        if value == INF:
            continue  # an infinite price marks a forbidden member
        key = (value, len(members), members)
        if best is None or key < best:
            best = key
    if best is None:
        return Solution.infeasible(problem.kind, ("oracle",))
    return Solution.of(problem.kind, best[2], best[0], ("oracle",))


# -- differential runner --------------------------------------------------------


def _fmt(x) -> str:
    return "INF" if x == INF else format_weight(x)


@dataclass(frozen=True)
class Mismatch:
    seed: int
    n: int
    solver: Solution
    oracle: Solution
    model: CircularArcModel
    weights: WeightMap
    reason: str

    def header(self) -> str:
        return (
            f"MISMATCH seed={self.seed} n={self.n} "
            f"solver={_fmt(self.solver.value)} oracle={_fmt(self.oracle.value)}"
        )


@dataclass(frozen=True)
class DiffReport:
    problem: Problem
    trials: int
    mismatches: tuple[Mismatch, ...]
    seconds: float = field(default=0.0, compare=False)

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def to_text(self) -> str:
        from .io import emit_model, emit_weights

        lines = []
        for mm in self.mismatches:
            lines.append(mm.header())
            lines.append(f"c reason: {mm.reason}")
            lines.append(f"c solver trace: {' '.join(mm.solver.trace)}")
            lines.append(emit_model(mm.model).rstrip("\n"))
            lines.append(emit_weights(mm.weights).rstrip("\n"))
        lines.append(f"c {self.problem.value} trials={self.trials} mismatches={len(self.mismatches)}")
        return "\n".join(lines) + "\n"


def trial_seed(seed: int, t: int) -> int:
    return int(_rng(seed, t, 7).integers(0, 2**62))


def compare(problem, model, w, solver_fn=None):
    """Run the solver and the oracle on one instance; returns
    ``(solver_solution, oracle_solution, reason or None)``."""
    from .graph_core import verify
    from .solvers import solve

    problem = Problem(problem)
    solver_fn = solver_fn or solve
    g = intersection_graph(model)
    got = solver_fn(problem, model, w)
    want = oracle_solve(problem, g, w)
    if got.feasible != want.feasible:
        return got, want, "feasibility differs"
    if not got.feasible:
        return got, want, None
    ok, value, why = verify(problem, g, w, got.members)
    if not ok:
        return got, want, f"solver members rejected: {why}"
    if value != got.value:
        return got, want, f"reported value {format_weight(got.value)} but members weigh {format_weight(value)}"
    if got.value != want.value:
        return got, want, "values differ"
    return got, want, None


def differential_run(
    problem,
    trials: int,
    n_range: tuple[int, int],
    weight_spec=WeightSpec.UNIT,
    seed: int = 0,
    family=Family.RANDOM,
    solver_fn=None,
) -> DiffReport:
    problem = Problem(problem)
    lo, hi = n_range
    if lo < 1 or hi < lo:
        raise InvalidSpec(f"bad n range {n_range}")
    picker = _rng(seed, 11)
    found = []
    began = time.perf_counter()
    for t in range(trials):
        n = int(picker.integers(lo, hi + 1))
        s = trial_seed(seed, t)
        model, w = generate(GenSpec(s, n, family, weight_spec, problem.kind))
        got, want, reason = compare(problem, model, w, solver_fn)
        if reason is not None:
            found.append(Mismatch(s, n, got, want, model, w, reason))
    return DiffReport(problem, trials, tuple(found), time.perf_counter() - began)
