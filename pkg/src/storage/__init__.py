"""Storage module: edge lists, partition files and the trajectory records written to CSV."""

from .formats import (
    EdgeListDocument,
    EdgeListError,
    PartitionError,
    frame_to_csv,
    parse_edge_list,
    parse_partition,
    read_edge_list_file,
    trajectory_frame,
    write_edge_list,
    write_partition,
    write_trajectory_csv,
)
from .models import DICE_COLUMNS, ROAM_COLUMNS, DiceRow, RoamRow, RunStatus, Trajectory, TrajectoryKind

__all__ = [
    "DICE_COLUMNS",
    "ROAM_COLUMNS",
    "DiceRow",
    "EdgeListDocument",
    "EdgeListError",
    "PartitionError",
    "RoamRow",
    "RunStatus",
    "Trajectory",
    "TrajectoryKind",
    "frame_to_csv",
    "parse_edge_list",
    "parse_partition",
    "read_edge_list_file",
    "trajectory_frame",
    "write_edge_list",
    "write_partition",
    "write_trajectory_csv",
]
