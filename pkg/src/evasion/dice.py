import logging
import math
from dataclasses import dataclass

import numpy as np

from harness.seeding import derive_rng, derive_seed
from measures.community import CommunityStructure, Detector, detect
from measures.concealment import ConcealmentParams, HiddenGroup, mu
from network import Edge, Graph, RewiringPlan
from storage.models import DiceRow, Trajectory, TrajectoryKind

logger = logging.getLogger(__name__)

# Uniform resamples allowed per requested external link.
ADDITION_ATTEMPTS_PER_LINK = 10

SELECTION_STREAM = 0
ROUND_STREAM = 1
DETECTION_STREAM = 2


class DiceError(ValueError):
    """Raised on invalid DICE parameters or hidden groups."""


@dataclass(frozen=True)
class DiceConfig:
    """Each round removes ``d`` internal links and adds ``budget - d`` external ones."""

    budget: int = 4
    d: int = 2
    seed: int = 0

    def __post_init__(self) -> None:
        if self.budget < 1:
            msg = f"DICE budget must be at least 1, got {self.budget}"
            raise DiceError(msg)
        if not 0 <= self.d <= self.budget:
            msg = f"internal disconnects must satisfy 0 <= d <= budget, got d={self.d}, budget={self.budget}"
            raise DiceError(msg)


def dice_round(g: Graph, c: HiddenGroup, cfg: DiceConfig, rng: np.random.Generator) -> tuple[Graph, RewiringPlan]:
    """Run one DICE round for the hidden group ``c``.

    Removes ``min(d, internal links)`` links inside ``c``, sampled uniformly without
    replacement, then adds up to ``budget - d`` links between a uniform member and a uniform
    non-member. Draws that hit an existing link are retried, at most ten times per requested
    link, and the remaining additions are skipped. Directed links get a uniform orientation.

    Raises
    ------
        DiceError: If ``c`` is empty, names unknown nodes, or covers every node while
            additions are requested.

    """
    if not c.members:
        msg = "the hidden group is empty"
        raise DiceError(msg)
    if not all(0 <= v < g.n for v in c.members):
        msg = "the hidden group names nodes outside the graph"
        raise DiceError(msg)
    wanted = cfg.budget - cfg.d
    members = sorted(c.members)
    outsiders = sorted(set(g.nodes) - c.members)
    if wanted > 0 and not outsiders:
        msg = "the hidden group covers every node, so there is nobody outside to connect to"
        raise DiceError(msg)

    internal = g.subgraph_edges(members)
    removal_count = min(cfg.d, len(internal))
    picked = rng.choice(len(internal), size=removal_count, replace=False) if removal_count else []
    removals = tuple(internal[i] for i in sorted(int(i) for i in picked))

    additions: list[Edge] = []
    taken: set[Edge] = set()
    attempts = 0
    while len(additions) < wanted and attempts < ADDITION_ATTEMPTS_PER_LINK * wanted:
        attempts += 1
        member = members[int(rng.integers(len(members)))]
        outsider = outsiders[int(rng.integers(len(outsiders)))]
        if g.directed and rng.random() < 0.5:
            edge = (outsider, member)
        else:
            edge = (member, outsider)
        key = edge if g.directed else (min(edge), max(edge))
        if g.has_edge(*edge) or key in taken:
            continue
        taken.add(key)
        additions.append(edge)
    if len(additions) < wanted:
        logger.warning("Skipped %d external links after %d attempts", wanted - len(additions), attempts)

    plan = RewiringPlan(additions=tuple(additions), removals=removals, budget=cfg.budget)
    return g.apply(plan), plan


def select_target_community(cs: CommunityStructure, rng: np.random.Generator) -> HiddenGroup:
    """Pick a community whose size is the lower median of all sizes, uniformly among ties."""
    if not len(cs):
        msg = "cannot select from an empty community structure"
        raise DiceError(msg)
    sizes = sorted(len(community) for community in cs)
    median = sizes[(len(sizes) - 1) // 2]
    candidates = [community for community in cs if len(community) == median]
    return HiddenGroup(members=candidates[int(rng.integers(len(candidates)))])


def round_count(group: HiddenGroup, budget: int) -> int:
    return math.ceil(len(group) / budget)


def dice_run(
    g: Graph,
    detector: Detector,
    cfg: DiceConfig,
    alpha: float,
    target: HiddenGroup | None = None,
) -> Trajectory:
    """Hide a median-sized detected community from ``detector``.

    Detects communities once, selects the hidden group (unless ``target`` is given), then runs
    ``ceil(|C†| / b)`` rounds of DICE followed by re-detection, recording the concealment of the
    fixed original group after every round. Row 0 scores the group against the initial
    detection. Every random stream is derived from ``cfg.seed``.
    """
    params = ConcealmentParams(alpha=alpha)
    initial = detect(g, detector, derive_seed(cfg.seed, DETECTION_STREAM, 0))
    group = target or select_target_community(initial, derive_rng(cfg.seed, SELECTION_STREAM))
    rounds = round_count(group, cfg.budget)
    logger.debug("DICE hides %d nodes over %d rounds against %s", len(group), rounds, detector.label)

    trajectory = Trajectory(kind=TrajectoryKind.DICE)
    trajectory.rows.append(DiceRow(round=0, pct_rounds=0.0, mu=mu(group, initial, params, g.n)))
    for index in range(1, rounds + 1):
        g, _ = dice_round(g, group, cfg, derive_rng(cfg.seed, ROUND_STREAM, index))
        detected = detect(g, detector, derive_seed(cfg.seed, DETECTION_STREAM, index))
        trajectory.rows.append(
            DiceRow(round=index, pct_rounds=100.0 * index / rounds, mu=mu(group, detected, params, g.n))
        )
    return trajectory
