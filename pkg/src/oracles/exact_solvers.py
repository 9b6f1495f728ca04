import itertools
import logging
import math
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field

from measures.centrality import CentralityKind, centrality_of
from measures.influence import InfluenceEstimate, InfluenceModel, exact_influence_ic, exact_influence_lt
from network import Edge, Graph, RewiringPlan, is_connected

logger = logging.getLogger(__name__)

MAX_PLANS = 1_000_000
MAX_RECOVERY_CANDIDATES = 20
TARGET_TOLERANCE = 1e-12


class SearchSpaceError(ValueError):
    """Raised when an exhaustive search would exceed its cap."""


def _normalize(g: Graph, edges: Sequence[Edge] | frozenset[Edge]) -> set[Edge]:
    if g.directed:
        return set(edges)
    return {(min(u, v), max(u, v)) for u, v in edges}


@dataclass(frozen=True)
class DisguiseProblem:
    """Lower ``kind`` centrality of ``v_dagger`` with at most ``budget`` edge changes.

    ``forbidden_removals`` must be edges of the graph and ``forbidden_additions`` non-edges.
    """

    graph: Graph
    v_dagger: int
    budget: int
    kind: CentralityKind
    forbidden_removals: frozenset[Edge] = frozenset()
    forbidden_additions: frozenset[Edge] = frozenset()

    def removal_candidates(self) -> list[Edge]:
        banned = _normalize(self.graph, self.forbidden_removals)
        return [e for e in self.graph.edges() if e not in banned]

    def addition_candidates(self) -> list[Edge]:
        banned = _normalize(self.graph, self.forbidden_additions)
        return [e for e in self.graph.non_edges() if e not in banned]


@dataclass(frozen=True)
class DisguiseResult:
    plan: RewiringPlan
    value: float
    feasible: bool
    plans_checked: int


def plan_count(candidates: int, budget: int) -> int:
    return sum(math.comb(candidates, size) for size in range(min(budget, candidates) + 1))


def optimal_disguise(problem: DisguiseProblem, require_connected: bool = True) -> DisguiseResult:
    """Find the plan that minimizes the centrality of ``v_dagger``.

    Plans are enumerated by size and then lexicographically over the removal candidates
    followed by the addition candidates; a later plan replaces the incumbent only if it is
    strictly better, so ties keep the earliest plan. With ``require_connected`` only plans
    leaving the graph connected (strongly, when directed) are considered; if none is, the
    empty plan is reported as infeasible.

    Raises
    ------
        SearchSpaceError: If more than a million plans would be enumerated.

    """
    g = problem.graph
    moves = [("remove", e) for e in problem.removal_candidates()]
    moves += [("add", e) for e in problem.addition_candidates()]
    total = plan_count(len(moves), problem.budget)
    if total > MAX_PLANS:
        msg = f"{total} plans over {len(moves)} candidate edges exceed the cap of {MAX_PLANS}"
        raise SearchSpaceError(msg)

    best: tuple[float, RewiringPlan] | None = None
    checked = 0
    for size in range(min(problem.budget, len(moves)) + 1):
        for combo in itertools.combinations(moves, size):
            plan = RewiringPlan(
                additions=tuple(e for op, e in combo if op == "add"),
                removals=tuple(e for op, e in combo if op == "remove"),
            )
            candidate = g.apply(plan)
            checked += 1
            if require_connected and not is_connected(candidate):
                continue
            value = centrality_of(candidate, problem.v_dagger, problem.kind)
            if best is None or value < best[0] - TARGET_TOLERANCE:
                best = (value, plan)

    if best is None:
        logger.info("No plan within budget %d keeps the graph connected", problem.budget)
        value = centrality_of(g, problem.v_dagger, problem.kind)
        return DisguiseResult(plan=RewiringPlan(), value=value, feasible=False, plans_checked=checked)
    return DisguiseResult(plan=best[1], value=best[0], feasible=True, plans_checked=checked)


@dataclass(frozen=True)
class RecoveryProblem:
    """Restore the influence of ``v_dagger`` by adding as few edges as possible.

    Exactly one of ``target_per_node`` (individual recovery) and ``target_total`` (global
    recovery) is set. ``arc_probabilities`` and ``thresholds`` fix the IC arc probabilities and
    the LT thresholds instead of the uniform ``p`` and random thresholds.
    """

    graph: Graph
    v_dagger: int
    model: InfluenceModel
    p: float = 0.15
    forbidden_additions: frozenset[Edge] = frozenset()
    target_per_node: Mapping[int, float] | None = None
    target_total: float | None = None
    arc_probabilities: Mapping[Edge, float] | None = field(default=None, compare=False)
    thresholds: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        if (self.target_per_node is None) == (self.target_total is None):
            msg = "set exactly one of target_per_node and target_total"
            raise ValueError(msg)

    def addition_candidates(self) -> list[Edge]:
        banned = _normalize(self.graph, self.forbidden_additions)
        return [e for e in self.graph.non_edges() if e not in banned]

    def influence(self, g: Graph) -> InfluenceEstimate:
        if self.model is InfluenceModel.IC:
            return exact_influence_ic(g, self.v_dagger, self.p, self.arc_probabilities)
        return exact_influence_lt(g, self.v_dagger, self.thresholds)

    def is_met(self, estimate: InfluenceEstimate) -> bool:
        if self.target_total is not None:
            return estimate.total >= self.target_total - TARGET_TOLERANCE
        return all(estimate.per_node[w] >= f - TARGET_TOLERANCE for w, f in self.target_per_node.items())


@dataclass(frozen=True)
class RecoveryResult:
    additions: tuple[Edge, ...] | None
    feasible: bool
    total: float

    @property
    def size(self) -> int | None:
        return None if self.additions is None else len(self.additions)


def minimal_recovery(problem: RecoveryProblem) -> RecoveryResult:
    """Return the smallest set of allowed additions that meets the influence target.

    Candidate sets are tried by size and then lexicographically. When even adding every
    candidate misses the target, the result is infeasible.

    Raises
    ------
        SearchSpaceError: If more than 20 additions are allowed.

    """
    candidates = problem.addition_candidates()
    if len(candidates) > MAX_RECOVERY_CANDIDATES:
        msg = f"{len(candidates)} candidate additions exceed the cap of {MAX_RECOVERY_CANDIDATES}"
        raise SearchSpaceError(msg)
    g = problem.graph
    for size in range(len(candidates) + 1):
        for combo in itertools.combinations(candidates, size):
            estimate = problem.influence(g.apply(RewiringPlan(additions=combo)))
            if problem.is_met(estimate):
                return RecoveryResult(additions=combo, feasible=True, total=estimate.total)
    full = problem.influence(g.apply(RewiringPlan(additions=tuple(candidates))))
    return RecoveryResult(additions=None, feasible=False, total=full.total)
