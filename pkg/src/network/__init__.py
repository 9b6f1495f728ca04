"""Simple directed and undirected graphs plus the traversal primitives every measure builds on."""

from .graph import Edge, Graph, GraphError, RewiringPlan
from .traversal import UNREACHABLE, BrandesPass, bfs_distances, brandes_pass, components, is_connected

__all__ = [
    "UNREACHABLE",
    "BrandesPass",
    "Edge",
    "Graph",
    "GraphError",
    "RewiringPlan",
    "bfs_distances",
    "brandes_pass",
    "components",
    "is_connected",
]
