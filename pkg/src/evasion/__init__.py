"""Evasion heuristics: ROAM for individuals, DICE for communities, and the lieutenant network."""

from .dice import DiceConfig, DiceError, dice_round, dice_run, round_count, select_target_community
from .lieutenant import (
    LieutenantError,
    LieutenantSpec,
    NodeRole,
    SweepCell,
    build_lieutenant,
    check_dominance_precondition,
    lieutenant_cell,
    lieutenant_sweep,
)
from .roam import RoamConfig, RoamError, SelectionStrategy, roam_run, roam_step

__all__ = [
    "DiceConfig",
    "DiceError",
    "LieutenantError",
    "LieutenantSpec",
    "NodeRole",
    "RoamConfig",
    "RoamError",
    "SelectionStrategy",
    "SweepCell",
    "build_lieutenant",
    "check_dominance_precondition",
    "dice_round",
    "dice_run",
    "lieutenant_cell",
    "lieutenant_sweep",
    "roam_run",
    "roam_step",
    "round_count",
    "select_target_community",
]
