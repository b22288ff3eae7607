"""Exact minimum-weight efficient and perfect domination on circular-arc graphs."""
from .arc_model import CircularArcModel, normalize_model
from .errors import ArcDomError
from .graph_core import Color, Graph, Problem, Solution, intersection_graph, line_graph, verify
from .solvers import solve
from .weights import EDGE, INF, VERTEX, WeightMap

__all__ = [
    "ArcDomError",
    "CircularArcModel",
    "Color",
    "EDGE",
    "Graph",
    "INF",
    "Problem",
    "Solution",
    "VERTEX",
    "WeightMap",
    "intersection_graph",
    "line_graph",
    "normalize_model",
    "solve",
    "verify",
]
__version__ = "0.1.0"
