"""Maximal planar graphs, local moves, and maximum-weight planar subgraph solvers."""

from .core import (
    DualPath,
    Edge,
    Face,
    Triangulation,
    Vertex,
    WeightedInstance,
    build_triangulation,
    dual_shortest_path,
    edge,
    face,
    stacked_triangulation,
)
from .errors import MaxplanarError
from .moves import (
    Move,
    MoveSequence,
    apply_sequence,
    edge_substitute,
    flip_added_edge,
    invert_sequence,
    relocation_as_flips,
    transform,
    vertex_relocate,
)
from .planarity import SpanningTree, is_maximal_planar, is_planar, maximum_spanning_tree
from .solver import (
    AnnealSchedule,
    SolveReport,
    count_triangulations,
    counterexample_instance,
    counterexample_optimal_edges,
    enumerate_triangulations,
    exact_mwpsp,
    local_search,
    mst_greedy,
    verify_proposition4,
)

__version__ = "0.1.0"

__all__ = [
    "AnnealSchedule",
    "DualPath",
    "Edge",
    "Face",
    "MaxplanarError",
    "Move",
    "MoveSequence",
    "SolveReport",
    "SpanningTree",
    "Triangulation",
    "Vertex",
    "WeightedInstance",
    "apply_sequence",
    "build_triangulation",
    "count_triangulations",
    "counterexample_instance",
    "counterexample_optimal_edges",
    "dual_shortest_path",
    "edge",
    "edge_substitute",
    "enumerate_triangulations",
    "exact_mwpsp",
    "face",
    "flip_added_edge",
    "invert_sequence",
    "is_maximal_planar",
    "is_planar",
    "local_search",
    "maximum_spanning_tree",
    "mst_greedy",
    "relocation_as_flips",
    "stacked_triangulation",
    "transform",
    "verify_proposition4",
    "vertex_relocate",
]
