"""Random network generators and the deterministic fixture graphs used across the project."""

from .generator import (
    GeneratorError,
    GeneratorSpec,
    GraphFamily,
    barabasi_albert,
    complete_graph,
    cycle_graph,
    disjoint_union,
    erdos_renyi,
    generate,
    path_graph,
    petersen_graph,
    star_graph,
    two_cliques_bridge,
    watts_strogatz,
)

__all__ = [
    "GeneratorError",
    "GeneratorSpec",
    "GraphFamily",
    "barabasi_albert",
    "complete_graph",
    "cycle_graph",
    "disjoint_union",
    "erdos_renyi",
    "generate",
    "path_graph",
    "petersen_graph",
    "star_graph",
    "two_cliques_bridge",
    "watts_strogatz",
]
