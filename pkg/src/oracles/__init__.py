"""Exhaustive solvers, hardness gadgets and definitional measures used to verify the fast code paths."""

from .exact_solvers import (
    DisguiseProblem,
    DisguiseResult,
    RecoveryProblem,
    RecoveryResult,
    SearchSpaceError,
    minimal_recovery,
    optimal_disguise,
    plan_count,
)
from .gadgets import (
    GadgetError,
    GadgetInstance,
    SetCoverInstance,
    betweenness_gadget,
    brute_force_hamiltonian,
    brute_force_set_cover,
    closed_form_counts,
    closeness_gadget,
    harmonic_target,
    ic_setcover_gadget,
    lt_setcover_gadget,
    random_set_cover,
)
from .naive import count_shortest_paths, naive_betweenness, naive_closeness, naive_degree

__all__ = [
    "DisguiseProblem",
    "DisguiseResult",
    "GadgetError",
    "GadgetInstance",
    "RecoveryProblem",
    "RecoveryResult",
    "SearchSpaceError",
    "SetCoverInstance",
    "betweenness_gadget",
    "brute_force_hamiltonian",
    "brute_force_set_cover",
    "closed_form_counts",
    "closeness_gadget",
    "count_shortest_paths",
    "harmonic_target",
    "ic_setcover_gadget",
    "lt_setcover_gadget",
    "minimal_recovery",
    "naive_betweenness",
    "naive_closeness",
    "naive_degree",
    "optimal_disguise",
    "plan_count",
    "random_set_cover",
]
