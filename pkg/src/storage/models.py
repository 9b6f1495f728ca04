from dataclasses import dataclass, field
from enum import Enum

ROAM_COLUMNS = ["execution", "degree_rank", "closeness_rank", "betweenness_rank", "ic_rel_influence", "lt_rel_influence"]
DICE_COLUMNS = ["round", "pct_rounds", "mu"]


class TrajectoryKind(str, Enum):
    """Which heuristic produced a trajectory."""

    ROAM = "roam"
    DICE = "dice"


class RunStatus(str, Enum):
    COMPLETE = "complete"
    FAILED = "failed"


@dataclass
class RoamRow:
    """Ranks and relative influence of the source node after ``execution`` ROAM steps.

    Attributes
    ----------
    execution : int
        Number of completed ROAM steps; 0 is the untouched graph.
    degree_rank, closeness_rank, betweenness_rank : int
        Competition ranks of the source node.
    rel_influence : dict[str, float]
        Current over original total influence, keyed by model name (``ic``, ``lt``).

    """

    execution: int
    degree_rank: int
    closeness_rank: int
    betweenness_rank: int
    rel_influence: dict[str, float] = field(default_factory=dict)

    def to_record(self) -> dict[str, float | int | None]:
        return {
            "execution": self.execution,
            "degree_rank": self.degree_rank,
            "closeness_rank": self.closeness_rank,
            "betweenness_rank": self.betweenness_rank,
            "ic_rel_influence": self.rel_influence.get("ic"),
            "lt_rel_influence": self.rel_influence.get("lt"),
        }


@dataclass
class DiceRow:
    """Concealment of the hidden group after ``round`` DICE rounds."""

    round: int
    pct_rounds: float
    mu: float

    def to_record(self) -> dict[str, float | int]:
        return {"round": self.round, "pct_rounds": self.pct_rounds, "mu": self.mu}


@dataclass
class Trajectory:
    """The per-step record of one heuristic run, in step order.

    A run that stopped on an error keeps the rows recorded so far with ``status`` FAILED.
    """

    kind: TrajectoryKind
    rows: list[RoamRow] | list[DiceRow] = field(default_factory=list)
    status: RunStatus = RunStatus.COMPLETE
    error: str | None = None

    @property
    def columns(self) -> list[str]:
        return ROAM_COLUMNS if self.kind is TrajectoryKind.ROAM else DICE_COLUMNS

    def records(self) -> list[dict[str, float | int | None]]:
        return [row.to_record() for row in self.rows]

    def fail(self, error: Exception) -> "Trajectory":
        self.status = RunStatus.FAILED
        self.error = str(error)
        return self
