"""Circular-arc models on a discrete circle and the queries run on them.

A model with ``n`` arcs lives on a circle of ``2n`` grid slots; each slot holds
exactly one arc endpoint. Arc ``i`` is the *open* clockwise interval from
``starts[i]`` to ``ends[i]``. Segment ``g`` is the open stretch between slots
``g`` and ``g + 1`` (mod ``2n``); all points of a segment see the same arcs.

Arc ids are list indices ``0 .. n-1``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    DegenerateArc,
    EmptyModel,
    InvalidModel,
    PlacementConflict,
    PreconditionViolated,
)

SS, ST, TS, TT = "SS", "ST", "TS", "TT"

LEFT_PART = "LEFT_PART"
RIGHT_PART = "RIGHT_PART"
LEAF_MINUS = "LEAF_MINUS"
LEAF_PLUS = "LEAF_PLUS"
COPY = "COPY"
EXTRA = "EXTRA"


@dataclass(frozen=True)
class Arc:
    id: int
    start: int
    end: int


@dataclass(frozen=True)
class Segment:
    index: int
    left_endpoint: int
    right_endpoint: int
    kind: str


class CircularArcModel:
    """Immutable circular-arc model. ``arcs`` is a sequence of ``(start, end)``."""

    def __init__(self, arcs: Iterable[Sequence[int]]):
        arcs = tuple((int(s), int(t)) for s, t in arcs)
        n = len(arcs)
        size = 2 * n
        seen = bytearray(size)
        for i, (s, t) in enumerate(arcs):
            if s == t:
                raise DegenerateArc(f"arc {i} has start == end == {s}")
            for x in (s, t):
                if not 0 <= x < size:
                    raise InvalidModel(f"arc {i}: position {x} outside [0, {size})")
                if seen[x]:
                    raise InvalidModel(f"position {x} used twice")
                seen[x] = 1
        self._arcs = arcs
        self._size = size

    # -- basic accessors -------------------------------------------------

    @property
    def n(self) -> int:
        return len(self._arcs)

    @property
    def grid_size(self) -> int:
        return self._size

    @property
    def pairs(self) -> tuple[tuple[int, int], ...]:
        return self._arcs

    @property
    def arcs(self) -> list[Arc]:
        return [Arc(i, s, t) for i, (s, t) in enumerate(self._arcs)]

    def start(self, i: int) -> int:
        return self._arcs[i][0]

    def end(self, i: int) -> int:
        return self._arcs[i][1]

    def length(self, i: int) -> int:
        s, t = self._arcs[i]
        return (t - s) % self._size

    def __len__(self):
        return len(self._arcs)

    def __eq__(self, other):
        return isinstance(other, CircularArcModel) and self._arcs == other._arcs

    def __hash__(self):
        return hash(self._arcs)

    def __repr__(self):
        return f"CircularArcModel({list(self._arcs)!r})"

    # -- geometry --------------------------------------------------------

    def contains_point(self, i: int, pos: int) -> bool:
        """Whether grid slot ``pos`` lies inside open arc ``i``."""
        s, t = self._arcs[i]
        size = self._size
        return 0 < (pos - s) % size < (t - s) % size

    def contains_segment(self, i: int, seg: int) -> bool:
        s, t = self._arcs[i]
        size = self._size
        return (seg - s) % size < (t - s) % size

    def intersects(self, i: int, j: int) -> bool:
        """Open arcs meet iff one of them contains the other's start."""
        return self.contains_point(i, self._arcs[j][0]) or self.contains_point(
            j, self._arcs[i][0]
        )

    @cached_property
    def owner(self) -> np.ndarray:
        """``owner[pos]`` is the arc whose endpoint sits at slot ``pos``."""
        own = np.empty(self.grid_size, dtype=np.int64)
        for i, (s, t) in enumerate(self._arcs):
            own[s] = i
            own[t] = i
        return own

    @cached_property
    def is_start(self) -> np.ndarray:
        flags = np.zeros(self.grid_size, dtype=bool)
        for s, _ in self._arcs:
            flags[s] = True
        return flags

    @cached_property
    def coverage(self) -> np.ndarray:
        """``coverage[g]`` = number of arcs over segment ``g``."""
        size = self.grid_size
        if size == 0:
            return np.zeros(0, dtype=np.int64)
        starts = np.fromiter((s for s, _ in self._arcs), dtype=np.int64, count=self.n)
        ends = np.fromiter((t for _, t in self._arcs), dtype=np.int64, count=self.n)
        delta = np.zeros(size, dtype=np.int64)
        delta[starts] += 1
        delta[ends] -= 1
        wrapping = int(np.count_nonzero(starts > ends))
        return np.cumsum(delta) + wrapping

    @cached_property
    def _unrolled(self) -> "_Unrolled":
        return _Unrolled(self)


class _Unrolled:
    """Arcs laid out as intervals on four copies of the circle.

    Copy ``c`` of arc ``i`` is the interval ``(s_i + c*N, s_i + c*N + len_i)``.
    ``pref_max[x]`` is the largest right end among intervals starting before
    ``x``; ``suf_min[x]`` the smallest right end among intervals starting
    after ``x`` (``x`` in ``[0, 4N)``).
    """

    COPIES = 4

    def __init__(self, model: CircularArcModel):
        size = model.grid_size
        self.size = size
        total = size * self.COPIES
        ends_at = np.full(total, -1, dtype=np.int64)
        starts = np.fromiter((s for s, _ in model.pairs), dtype=np.int64, count=model.n)
        ends = np.fromiter((t for _, t in model.pairs), dtype=np.int64, count=model.n)
        lengths = (ends - starts) % size
        self.starts = starts
        self.lengths = lengths
        for c in range(self.COPIES):
            ends_at[starts + c * size] = starts + c * size + lengths
        self.end_at = ends_at
        big = np.iinfo(np.int64).max
        shifted = np.concatenate(([-1], ends_at[:-1]))
        self.pref_max = np.maximum.accumulate(shifted)
        mins = np.where(ends_at >= 0, ends_at, big)
        suf = np.minimum.accumulate(mins[::-1])[::-1]
        self.suf_min = np.concatenate((suf[1:], [big]))

    def lifted(self):
        """Start and end arrays of every arc's copy on the second turn."""
        s = self.starts + self.size
        return s, s + self.lengths

    def covers_closed(self, lo: int, hi: int) -> bool:
        """Some arc contains every point of the closed stretch ``[lo, hi]``."""
        return lo >= 0 and self.pref_max[lo] > hi

    def nothing_inside(self, lo: int, hi: int) -> bool:
        """No arc lies entirely within the closed stretch ``[lo, hi]``."""
        return self.suf_min[lo] > hi


# -- construction ------------------------------------------------------------


def normalize_model(raw: Iterable[Sequence[int]]) -> CircularArcModel:
    """Relabel arbitrary integer endpoints onto the ``0 .. 2n-1`` grid.

    Order is preserved. At a shared raw position ends come before starts, so
    arcs that merely touch stay disjoint; remaining ties go to the lower id.
    """
    raw = [tuple(a) for a in raw]
    if not raw:
        raise EmptyModel("model has no arcs")
    keyed = []
    for i, (s, t) in enumerate(raw):
        if s == t:
            raise DegenerateArc(f"arc {i} collapses: start == end == {s}")
        keyed.append(((s, 1, i), i, True))
        keyed.append(((t, 0, i), i, False))
    return _relabel(keyed, len(raw))


def _relabel(keyed, n: int) -> CircularArcModel:
    keyed.sort(key=lambda item: item[0])
    starts = [0] * n
    ends = [0] * n
    for pos, (_, arc, is_start) in enumerate(keyed):
        if is_start:
            starts[arc] = pos
        else:
            ends[arc] = pos
    return CircularArcModel(zip(starts, ends))


# -- segments and point queries ------------------------------------------------


def segment(model: CircularArcModel, g: int) -> Segment:
    size = model.grid_size
    flags = model.is_start
    right = (g + 1) % size
    kind = ("S" if flags[g] else "T") + ("S" if flags[right] else "T")
    return Segment(g, g, right, kind)


def segments(model: CircularArcModel) -> list[Segment]:
    return [segment(model, g) for g in range(model.grid_size)]


def arcs_at(model: CircularArcModel, where, *, point: bool = False) -> frozenset[int]:
    """Arcs containing segment ``where`` (a :class:`Segment` or index).

    With ``point=True`` ``where`` is a grid slot; the arc ending or starting
    there does not contain it.
    """
    if isinstance(where, Segment):
        where = where.index
    if point:
        return frozenset(i for i in range(model.n) if model.contains_point(i, where))
    return frozenset(i for i in range(model.n) if model.contains_segment(i, where))


def coverage_extremes(model: CircularArcModel):
    """``(min_count, max_count, min_witness, max_witness)`` over all segments."""
    if model.n == 0:
        raise EmptyModel("coverage of an empty model")
    cov = model.coverage
    lo = int(np.argmin(cov))
    hi = int(np.argmax(cov))
    return int(cov[lo]), int(cov[hi]), segment(model, lo), segment(model, hi)


def _lifted(model: CircularArcModel, i: int) -> tuple[int, int]:
    """Arc ``i`` as an interval on the second copy of the circle."""
    size = model.grid_size
    s = model.start(i) + size
    return s, s + model.length(i)


def universal_arcs(model: CircularArcModel) -> list[int]:
    """All arcs meeting every other arc (no arc fits in their complement)."""
    if model.n == 0:
        return []
    un = model._unrolled
    s, t = un.lifted()
    return np.flatnonzero(un.suf_min[t] > s + un.size).tolist()


def find_universal_arc(model: CircularArcModel) -> int | None:
    found = universal_arcs(model)
    return found[0] if found else None


def _pair_partner_mask(model: CircularArcModel) -> np.ndarray:
    """Per arc: some other arc covers the closed complement."""
    un = model._unrolled
    s, t = un.lifted()
    return un.pref_max[t] > s + un.size


def _three_cover_mask(model: CircularArcModel) -> np.ndarray:
    """Per arc: it plus at most two more arcs cover the circle (greedy reach)."""
    un = model._unrolled
    s, t = un.lifted()
    reach = un.pref_max[t]
    again = un.pref_max[np.maximum(reach, 0)]
    return (reach > t) & (np.maximum(reach, again) > s + un.size)


def _arc_covers_closed(model: CircularArcModel, j: int, lo: int, hi: int) -> bool:
    """Whether arc ``j`` contains the closed stretch ``[lo, hi]`` (lifted coords)."""
    size = model.grid_size
    s = model.start(j)
    length = model.length(j)
    # shift arc j by whole turns so that its copy starts just before lo
    k = (lo - s) // size
    start = s + k * size
    if start == lo:
        start -= size
    return start < lo and start + length > hi


def find_small_cover(model: CircularArcModel, k: int) -> frozenset[int] | None:
    """Lexicographically least set of at most ``k`` arcs covering the circle.

    A single open arc never covers the circle, so the answer is a pair, or
    (for ``k == 3`` and no pair existing) a triple.
    """
    if k not in (2, 3):
        raise ValueError("k must be 2 or 3")
    n = model.n
    size = model.grid_size
    pair = np.flatnonzero(_pair_partner_mask(model))
    if pair.size:
        i = int(pair[0])
        s, t = _lifted(model, i)
        for j in range(n):
            if j != i and _arc_covers_closed(model, j, t, s + size):
                return frozenset((i, j))
        raise AssertionError("pair partner vanished")
    if k == 2:
        return None
    un = model._unrolled
    for i in np.flatnonzero(_three_cover_mask(model)).tolist():
        for j in range(i + 1, n):
            gap = _union_gap(model, i, j)
            if gap is None:
                continue
            lo, hi = gap
            if not un.covers_closed(lo, hi):
                continue
            for c in range(i + 1, n):
                if c != j and _arc_covers_closed(model, c, lo, hi):
                    return frozenset((i, j, c))
        # i lies in a 3-cover only with smaller partners: impossible, since
        # those partners would have been found first
        raise AssertionError("triple with least member i not found")
    return None


def _union_gap(model: CircularArcModel, i: int, j: int):
    """Closed stretch left uncovered by overlapping arcs ``i`` and ``j``.

    Returns lifted ``(lo, hi)`` or ``None`` when the arcs are disjoint.
    """
    size = model.grid_size
    si, ti = _lifted(model, i)
    lj = model.length(j)
    sj = model.start(j)
    # place j's copy so that it starts within (si - size, si + size)
    dj = (sj - si) % size
    cand = [si + dj, si + dj - size]
    for start in cand:
        end = start + lj
        if start < ti and end > si:
            lo_start = min(si, start)
            hi_end = max(ti, end)
            return hi_end, lo_start + size
    return None


def is_hca_by_cover(model: CircularArcModel) -> bool:
    """No two or three arcs cover the circle (sufficient for a Helly model)."""
    return find_small_cover(model, 3) is None


# -- cycle structure -----------------------------------------------------------


@dataclass(frozen=True)
class CycleStructure:
    cycle: tuple[int, ...]
    pendants: dict = field(default_factory=dict)  # parent -> tuple of leaves

    def leaves(self, v: int) -> tuple[int, ...]:
        return self.pendants.get(v, ())

    @property
    def vertices(self) -> list[int]:
        out = list(self.cycle)
        for v in self.cycle:
            out.extend(self.leaves(v))
        return out


def extract_cycle_structure(model: CircularArcModel) -> CycleStructure:
    """Split a max-coverage-2 model into its covering cycle and pendant leaves.

    Cycle arcs come in circular order starting from the least id; every other
    arc is mapped to the unique cycle arc containing it.
    """
    if model.n == 0:
        raise PreconditionViolated("empty model")
    cmin, cmax, _, _ = coverage_extremes(model)
    if cmax != 2 or cmin != 1 or find_small_cover(model, 2) is not None:
        raise PreconditionViolated(
            f"need max coverage 2, min coverage 1 and no 2-cover (got {cmin}..{cmax})"
        )
    size = model.grid_size
    owner = model.owner
    flags = model.is_start
    # sweep once around from a slot; active set never exceeds two arcs
    active = set(arcs_at(model, size - 1))
    parent = {}
    for pos in range(size):
        a = int(owner[pos])
        if flags[pos]:
            for b in active:
                # b contains a iff a's end lies inside b
                if model.contains_point(b, model.end(a)) and (
                    (model.end(a) - model.start(b)) % size
                    > (model.start(a) - model.start(b)) % size
                ):
                    parent[a] = b
            active.add(a)
        else:
            active.discard(a)
    cycle_arcs = [i for i in range(model.n) if i not in parent]
    cycle_arcs.sort(key=lambda i: model.start(i))
    first = cycle_arcs.index(min(cycle_arcs))
    cycle = tuple(cycle_arcs[first:] + cycle_arcs[:first])
    k = len(cycle)
    if k < 4:
        raise PreconditionViolated("three cycle arcs cover the circle")
    for idx in range(k):
        a, b = cycle[idx], cycle[(idx + 1) % k]
        if not model.intersects(a, b):
            raise PreconditionViolated("consecutive cycle arcs do not overlap")
    pendants: dict[int, list[int]] = {}
    for leaf in sorted(parent):
        pendants.setdefault(parent[leaf], []).append(leaf)
    return CycleStructure(cycle, {p: tuple(ls) for p, ls in pendants.items()})


# -- surgery -------------------------------------------------------------------


@dataclass(frozen=True)
class SurgeryMap:
    """Correspondence between arcs of an original and a derived model."""

    forward: dict  # original id -> tuple of derived ids
    added: tuple = ()
    role_tags: dict = field(default_factory=dict)  # derived id -> tag
    cut_segment: int | None = None

    @cached_property
    def origin(self) -> dict:
        """Derived id -> original id (added arcs are absent)."""
        back = {}
        for old, news in self.forward.items():
            for d in news:
                back[d] = old
        return back

    def source(self, derived: int) -> int | None:
        return self.origin.get(derived)

    def then(self, later: "SurgeryMap") -> "SurgeryMap":
        """Compose ``self`` (original -> mid) with ``later`` (mid -> final)."""
        forward = {
            old: tuple(d for m in mids for d in later.forward.get(m, ()))
            for old, mids in self.forward.items()
        }
        added = tuple(d for m in self.added for d in later.forward.get(m, ())) + tuple(
            later.added
        )
        tags = dict(later.role_tags)
        for m, tag in self.role_tags.items():
            if tag == COPY:
                continue
            for d in later.forward.get(m, ()):
                if tags.get(d) == COPY:
                    tags[d] = tag
        return SurgeryMap(forward, added, tags, later.cut_segment)


def _existing_keys(model: CircularArcModel):
    """Sort keys for the current endpoints: ``(slot, 0, 0)``."""
    return {pos: (pos, 0, 0) for pos in range(model.grid_size)}


def cut_at(model: CircularArcModel, seg) -> tuple[CircularArcModel, SurgeryMap]:
    """Remove a point of segment ``seg`` from the circle.

    Every arc over the segment becomes a left part (keeping its id) ending
    just before the point and a right part (new id ``n, n+1, ...``) starting
    just after it. The result has an uncovered segment, so it is an interval
    model; ``SurgeryMap.cut_segment`` names that segment in the new grid.
    """
    if isinstance(seg, Segment):
        seg = seg.index
    n = model.n
    if not 0 <= seg < model.grid_size:
        raise PreconditionViolated(f"segment {seg} out of range")
    through = sorted(arcs_at(model, seg))
    keyed = []
    forward = {}
    tags = {}
    next_id = n
    right_ids = {}
    for i in through:
        right_ids[i] = next_id
        next_id += 1
    total = next_id
    for i, (s, t) in enumerate(model.pairs):
        if i in right_ids:
            r = right_ids[i]
            keyed.append(((s, 0, 0), i, True))
            keyed.append(((seg, 1, i), i, False))
            keyed.append(((seg, 3, i), r, True))
            keyed.append(((t, 0, 0), r, False))
            forward[i] = (i, r)
            tags[i] = LEFT_PART
            tags[r] = RIGHT_PART
        else:
            keyed.append(((s, 0, 0), i, True))
            keyed.append(((t, 0, 0), i, False))
            forward[i] = (i,)
            tags[i] = COPY
    keyed.append(((seg, 2, 0), -1, None))  # marker for the removed point
    keyed.sort(key=lambda item: item[0])
    marker = next(p for p, item in enumerate(keyed) if item[1] == -1)
    del keyed[marker]
    # the removed point sits between slots marker-1 and marker
    new_model = _relabel(keyed, total)
    cut_segment = (marker - 1) % new_model.grid_size
    return new_model, SurgeryMap(forward, (), tags, cut_segment)


@dataclass(frozen=True)
class Placement:
    """A new arc from slot ``start`` to slot ``end``.

    A slot ``(segment, rank)`` is a fresh position inside ``segment``; ranks
    order the fresh positions that share a segment.
    """

    start: tuple[int, int]
    end: tuple[int, int]
    tag: str = EXTRA


def insert_arcs(
    model: CircularArcModel, placements: Sequence[Placement]
) -> tuple[CircularArcModel, SurgeryMap]:
    """Add arcs at fresh positions; existing arcs keep ids and intersections."""
    n = model.n
    size = model.grid_size
    keyed = []
    for i, (s, t) in enumerate(model.pairs):
        keyed.append(((s, 0, 0), i, True))
        keyed.append(((t, 0, 0), i, False))
    used = set()
    added = []
    tags = {i: COPY for i in range(n)}
    for k, pl in enumerate(placements):
        new_id = n + k
        for slot, is_start in ((pl.start, True), (pl.end, False)):
            seg, rank = slot
            if not 0 <= seg < size:
                raise PlacementConflict(f"segment {seg} out of range")
            if slot in used:
                raise PlacementConflict(f"slot {slot} used twice")
            used.add(slot)
            keyed.append(((seg, 1, rank), new_id, is_start))
        added.append(new_id)
        tags[new_id] = pl.tag
    new_model = _relabel(keyed, n + len(placements))
    forward = {i: (i,) for i in range(n)}
    return new_model, SurgeryMap(forward, tuple(added), tags)


# -- edge counting ----------------------------------------------------------------


def _count_nested(lo, hi, starts, ends) -> int:
    """Number of (window, interval) pairs with ``lo < start`` and ``end < hi``.

    Bottom-up merge counting: items are ordered by ``lo``/``start`` and each
    window-before-interval pair is counted at the level where the two fall
    into different halves of a block. All positions must be distinct.
    """
    x = np.concatenate([lo, starts])
    kind = np.concatenate([np.zeros(len(lo), dtype=bool), np.ones(len(starts), dtype=bool)])
    val = np.concatenate([hi, ends])
    order = np.argsort(x, kind="stable")
    kind = kind[order]
    val = val[order]
    count = len(x)
    idx = np.arange(count, dtype=np.int64)
    big = int(val.max()) + 2 if count else 1
    total = 0
    level = 0
    while (1 << level) < count:
        half = idx >> level
        group = half >> 1
        left = (half & 1) == 0
        windows = left & ~kind
        intervals = ~left & kind
        if windows.any() and intervals.any():
            keys_left = np.sort(group[windows] * big + val[windows])
            g_right = group[intervals]
            keys_right = g_right * big + val[intervals]
            upper = np.searchsorted(keys_left, (g_right + 1) * big, side="left")
            below = np.searchsorted(keys_left, keys_right, side="right")
            total += int((upper - below).sum())
        level += 1
    return total


def edge_count(model: CircularArcModel) -> int:
    """Edges of the intersection graph without listing them.

    Two arcs are disjoint exactly when one lies inside the closed gap left by
    the other, so ``m`` is ``n(n-1)/2`` minus half the number of
    (arc, arc inside its gap) pairs.
    """
    n = model.n
    if n < 2:
        return 0
    un = model._unrolled
    size = model.grid_size
    starts = un.starts
    lengths = un.lengths
    lo = starts + lengths
    hi = starts + size
    all_starts = np.concatenate([starts, starts + size])
    all_ends = np.concatenate([starts + lengths, starts + size + lengths])
    nested = _count_nested(lo, hi, all_starts, all_ends)
    return n * (n - 1) // 2 - nested // 2
