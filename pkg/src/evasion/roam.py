import logging
from collections.abc import Sequence
from dataclasses import dataclass
from enum import Enum

import numpy as np

from harness.seeding import derive_rng
from harness.settings import DEFAULT_BUDGET
from measures.centrality import CentralityKind, source_ranks
from measures.influence import InfluenceConfig, estimate_influence, relative_influence
from network import Graph, RewiringPlan
from storage.models import RoamRow, Trajectory, TrajectoryKind

logger = logging.getLogger(__name__)


class RoamError(ValueError):
    """Raised when the source node has no link ROAM could remove."""


class SelectionStrategy(str, Enum):
    """Prefer the highest- or lowest-degree candidate."""

    MAX = "max"
    MIN = "min"


@dataclass(frozen=True)
class RoamConfig:
    """ROAM-x-y(b): ``v0_strategy`` picks the disconnected neighbor, ``target_strategy`` its new links.

    With ``seed`` unset degree ties go to the lowest id; with it set they are broken at random.
    """

    budget: int = DEFAULT_BUDGET
    v0_strategy: SelectionStrategy = SelectionStrategy.MAX
    target_strategy: SelectionStrategy = SelectionStrategy.MIN
    seed: int | None = None

    def __post_init__(self) -> None:
        if self.budget < 1:
            msg = f"ROAM budget must be at least 1, got {self.budget}"
            raise RoamError(msg)

    @property
    def label(self) -> str:
        return f"ROAM-{self.v0_strategy.value}-{self.target_strategy.value}({self.budget})"


def _order(
    g: Graph, candidates: Sequence[int], strategy: SelectionStrategy, rng: np.random.Generator | None
) -> list[int]:
    """Sort candidates by degree per ``strategy``; ties go to the lowest id unless ``rng`` shuffles them."""
    sign = -1 if strategy is SelectionStrategy.MAX else 1
    if rng is None:
        tiebreak = {v: v for v in candidates}
    else:
        tiebreak = dict(zip(candidates, rng.permutation(len(candidates)).tolist(), strict=True))
    return sorted(candidates, key=lambda v: (sign * g.degree(v), tiebreak[v]))


def roam_step(
    g: Graph, v_dagger: int, cfg: RoamConfig, rng: np.random.Generator | None = None
) -> tuple[Graph, RewiringPlan]:
    """Run one ROAM step for ``v_dagger``.

    Undirected: remove the link to a neighbor ``v0`` and connect ``v0`` to up to ``b - 1`` other
    neighbors of ``v_dagger`` that it is not yet adjacent to. Directed: ``v0`` is a successor
    and the new links point from predecessors of ``v_dagger`` to ``v0``. Degrees are taken
    from ``g``; the plan lists the additions before the removal.

    Args:
    ----
        g (Graph): The current network.
        v_dagger (int): The node being hidden.
        cfg (RoamConfig): Budget and selection strategies.
        rng (np.random.Generator | None): Breaks degree ties at random when given.

    Returns:
    -------
        tuple[Graph, RewiringPlan]: The rewired network and the plan applied to it.

    Raises:
    ------
        RoamError: If ``v_dagger`` has no neighbor (undirected) or successor (directed).

    """
    if g.directed:
        anchors = g.successors(v_dagger)
        if not anchors:
            msg = f"node {v_dagger} has no outgoing link to remove"
            raise RoamError(msg)
        v0 = _order(g, anchors, cfg.v0_strategy, rng)[0]
        candidates = [u for u in g.predecessors(v_dagger) if u != v0 and not g.has_edge(u, v0)]
        chosen = _order(g, candidates, cfg.target_strategy, rng)[: cfg.budget - 1]
        additions = tuple((u, v0) for u in chosen)
    else:
        anchors = g.neighbors(v_dagger)
        if not anchors:
            msg = f"node {v_dagger} is isolated; there is no link to remove"
            raise RoamError(msg)
        v0 = _order(g, anchors, cfg.v0_strategy, rng)[0]
        candidates = [u for u in anchors if u != v0 and not g.has_edge(v0, u)]
        chosen = _order(g, candidates, cfg.target_strategy, rng)[: cfg.budget - 1]
        additions = tuple((v0, u) for u in chosen)

    plan = RewiringPlan(additions=additions, removals=((v_dagger, v0),), budget=cfg.budget)
    logger.debug("ROAM on %d: drop (%d, %d), add %s", v_dagger, v_dagger, v0, additions)
    return g.apply(plan), plan


def _row(g: Graph, v_dagger: int, execution: int, rel_influence: dict[str, float]) -> RoamRow:
    ranks = source_ranks(g, v_dagger)
    return RoamRow(
        execution=execution,
        degree_rank=ranks[CentralityKind.DEGREE],
        closeness_rank=ranks[CentralityKind.CLOSENESS],
        betweenness_rank=ranks[CentralityKind.BETWEENNESS],
        rel_influence=rel_influence,
    )


def roam_run(
    g: Graph,
    v_dagger: int,
    cfg: RoamConfig,
    executions: int,
    influence_cfgs: Sequence[InfluenceConfig] = (),
    workers: int = 1,
) -> Trajectory:
    """Apply ROAM ``executions`` times in a row, recording the source node after each step.

    Row 0 describes the original network. Relative influence divides each configuration's
    current estimate by its estimate on the original network, using the same seed. When
    ``cfg.seed`` is set each execution breaks ties with its own derived stream. A step that
    fails ends the run and returns the rows so far, marked failed.
    """
    if executions < 1:
        msg = f"executions must be at least 1, got {executions}"
        raise RoamError(msg)
    baselines = {icfg.model.value: estimate_influence(g, v_dagger, icfg, workers) for icfg in influence_cfgs}
    trajectory = Trajectory(kind=TrajectoryKind.ROAM)
    trajectory.rows.append(_row(g, v_dagger, 0, {model: 1.0 for model in baselines}))
    for execution in range(1, executions + 1):
        rng = None if cfg.seed is None else derive_rng(cfg.seed, execution)
        try:
            g, _ = roam_step(g, v_dagger, cfg, rng)
        except RoamError as exc:
            logger.warning("%s stopped after %d executions: %s", cfg.label, execution - 1, exc)
            return trajectory.fail(exc)
        rel = {
            icfg.model.value: relative_influence(
                estimate_influence(g, v_dagger, icfg, workers), baselines[icfg.model.value]
            )
            for icfg in influence_cfgs
        }
        trajectory.rows.append(_row(g, v_dagger, execution, rel))
    return trajectory
