from fractions import Fraction

import pytest
from hypothesis import strategies as st

from arcdom.arc_model import CircularArcModel
from arcdom.graph_core import Graph, intersection_graph
from arcdom.weights import VERTEX, WeightMap

C4 = CircularArcModel([(0, 3), (2, 5), (4, 7), (6, 1)])
K3 = CircularArcModel([(4, 1), (0, 3), (2, 5)])
STAR = CircularArcModel([(0, 7), (1, 2), (3, 4), (5, 6)])
C6 = CircularArcModel([(2 * i, (2 * i + 3) % 12) for i in range(6)])
SINGLE = CircularArcModel([(0, 1)])


def path_model(k: int) -> CircularArcModel:
    """Interval model of the path on ``k`` vertices."""
    if k == 1:
        return SINGLE
    arcs = [(0, 2)] + [(2 * i - 1, 2 * i + 2) for i in range(1, k - 1)] + [(2 * k - 3, 2 * k - 1)]
    return CircularArcModel(arcs)


@pytest.fixture
def models():
    return {"C4": C4, "K3": K3, "STAR": STAR, "C6": C6, "SINGLE": SINGLE}


@st.composite
def arc_models(draw, min_n=1, max_n=8):
    n = draw(st.integers(min_n, max_n))
    perm = draw(st.permutations(range(2 * n)))
    return CircularArcModel([(perm[2 * i], perm[2 * i + 1]) for i in range(n)])


fractions = st.builds(Fraction, st.integers(-9, 9), st.integers(1, 4))
nonneg_fractions = st.builds(Fraction, st.integers(0, 9), st.integers(1, 4))


@st.composite
def weighted(draw, kind, signed=False, min_n=1, max_n=8):
    model = draw(arc_models(min_n, max_n))
    g = intersection_graph(model)
    keys = list(range(g.n)) if kind == VERTEX else list(g.edges)
    vals = draw(st.lists(fractions if signed else nonneg_fractions, min_size=len(keys), max_size=len(keys)))
    return model, g, WeightMap(kind, dict(zip(keys, vals)))


def graph(n, edges) -> Graph:
    return Graph(n, edges)
