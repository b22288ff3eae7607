"""Exact weights extended with +infinity, and vertex/edge weight maps.

Finite weights are :class:`fractions.Fraction`; the top element is ``math.inf``.
Python already gives ``Fraction + inf == inf`` and orders the two correctly,
so no wrapper type is needed.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Union

INF = math.inf

Weight = Union[Fraction, float]

VERTEX = "vertex"
EDGE = "edge"


def to_weight(x) -> Weight:
    """Coerce ints, Fractions, ``"p/q"`` strings, ``"inf"`` or ``math.inf``."""
    if isinstance(x, str):
        return parse_weight(x)
    if isinstance(x, float):
        if x == INF:
            return INF
        if math.isnan(x) or math.isinf(x):
            raise ValueError(f"unsupported weight {x!r}")
        return Fraction(x)
    return Fraction(x)


def parse_weight(text: str) -> Weight:
    text = text.strip()
    if text in ("inf", "+inf"):
        return INF
    return Fraction(text)


def is_finite(x: Weight) -> bool:
    return x != INF


def format_weight(x: Weight) -> str:
    """Lowest-terms ``p/q`` (always with a denominator) or ``inf``."""
    if x == INF:
        return "inf"
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def wsum(values: Iterable[Weight]) -> Weight:
    total: Weight = Fraction(0)
    for v in values:
        total = total + v
        if total == INF:
            return INF
    return total


def edge_key(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class WeightMap:
    """Weights on vertices (keys ``int``) or edges (keys ``(u, v)``, ``u < v``).

    Keys absent from ``values`` read as ``default``; ``default=None`` makes a
    missing key an error.
    """

    kind: str
    values: Mapping = field(default_factory=dict)
    default: Weight | None = None

    def __post_init__(self):
        if self.kind not in (VERTEX, EDGE):
            raise ValueError(f"unknown weight kind {self.kind!r}")
        if self.kind == EDGE:
            vals = {edge_key(*k): to_weight(v) for k, v in self.values.items()}
        else:
            vals = {int(k): to_weight(v) for k, v in self.values.items()}
        object.__setattr__(self, "values", vals)
        if self.default is not None:
            object.__setattr__(self, "default", to_weight(self.default))

    @classmethod
    def vertex(cls, values, default=None) -> "WeightMap":
        if not isinstance(values, Mapping):
            values = dict(enumerate(values))
        return cls(VERTEX, values, default)

    @classmethod
    def edge(cls, values, default=None) -> "WeightMap":
        return cls(EDGE, values, default)

    @classmethod
    def unit(cls, kind: str) -> "WeightMap":
        return cls(kind, {}, Fraction(1))

    def __getitem__(self, key) -> Weight:
        if self.kind == EDGE:
            key = edge_key(*key)
        try:
            return self.values[key]
        except KeyError:
            if self.default is None:
                raise
            return self.default

    def get(self, key, fallback=None):
        try:
            return self[key]
        except KeyError:
            return fallback

    def with_values(self, updates: Mapping) -> "WeightMap":
        vals = dict(self.values)
        vals.update(updates)
        return WeightMap(self.kind, vals, self.default)

    def total(self, keys: Iterable) -> Weight:
        return wsum(self[k] for k in keys)

    def min_value(self, keys: Iterable) -> Weight | None:
        vals = [self[k] for k in keys]
        return min(vals) if vals else None

    def materialize(self, keys: Iterable) -> "WeightMap":
        """Copy with an explicit entry for every key in ``keys`` and no default."""
        return WeightMap(self.kind, {k: self[k] for k in keys}, None)
