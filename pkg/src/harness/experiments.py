import logging
from collections.abc import Callable, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import pandas as pd
from tqdm import tqdm

from data_gen import GeneratorSpec, generate
from evasion.dice import DiceConfig, dice_run
from evasion.roam import RoamConfig, roam_run
from harness.config import ExperimentConfig
from harness.seeding import derive_rng, derive_seed
from harness.settings import PCT_BUCKETS
from measures.centrality import select_source_node
from measures.community import Detector, DetectorKind
from network import Graph
from storage import (
    DICE_COLUMNS,
    ROAM_COLUMNS,
    RunStatus,
    Trajectory,
    frame_to_csv,
    parse_partition,
    read_edge_list_file,
    write_trajectory_csv,
)

logger = logging.getLogger(__name__)

Z_95 = 1.96


@dataclass
class ReplicateOutcome:
    """Result of one replicate; ``trajectory`` holds whatever rows were recorded before a failure."""

    index: int
    seed: int
    trajectory: Trajectory | None = None
    error: str | None = None

    @property
    def ok(self) -> bool:
        return self.error is None and self.trajectory is not None and self.trajectory.status is RunStatus.COMPLETE


@dataclass
class ReplicateTask:
    """Picklable description of one replicate, sent to worker processes."""

    index: int
    seed: int
    graph: Graph | None
    generator: GeneratorSpec | None
    config: ExperimentConfig
    detector: Detector | None = None
    d: int | None = None

    def network(self) -> Graph:
        if self.graph is not None:
            return self.graph
        return generate(self.generator.with_seed(self.seed))


@dataclass
class LoadedNetwork:
    graph: Graph | None
    label_to_id: dict[str, int] | None


def replicate_seed(master_seed: int, index: int) -> int:
    return derive_seed(master_seed, index)


def load_network(config: ExperimentConfig) -> LoadedNetwork:
    """Read the fixed input graph once; generated networks are built inside each replicate."""
    if config.input_path is None:
        return LoadedNetwork(graph=None, label_to_id=None)
    document = read_edge_list_file(config.input_path, config.directed)
    logger.info("Loaded %s: %d nodes, %d edges", config.input_path, document.graph.n, document.graph.edge_count)
    return LoadedNetwork(graph=document.graph, label_to_id=document.label_to_id)


def load_detector(spec: str, network: LoadedNetwork) -> Detector:
    """Resolve ``louvain``, ``cnm``, ``gn`` or ``external:PATH``; external partitions are read now."""
    if not spec.startswith("external:"):
        return Detector(kind=DetectorKind(spec))
    path = Path(spec.removeprefix("external:"))
    if network.graph is None:
        msg = "an external partition needs a fixed --input graph"
        raise ValueError(msg)
    partition = parse_partition(path.read_text(encoding="utf-8"), network.graph.n, network.label_to_id)
    return Detector(kind=DetectorKind.EXTERNAL, partition=partition, source=str(path))


def run_roam_replicate(task: ReplicateTask) -> ReplicateOutcome:
    """Generate or reuse the network, pick the source node and run ROAM on it."""
    settings = task.config.roam
    try:
        g = task.network()
        v_dagger = select_source_node(g, derive_rng(task.seed, 0))
        cfg = RoamConfig(
            budget=settings.budget,
            v0_strategy=settings.v0_strategy,
            target_strategy=settings.target_strategy,
        )
        trajectory = roam_run(g, v_dagger, cfg, settings.executions, task.config.influence.configs(task.seed))
    except Exception as exc:
        logger.exception("ROAM replicate %d failed", task.index)
        return ReplicateOutcome(index=task.index, seed=task.seed, error=str(exc))
    return ReplicateOutcome(index=task.index, seed=task.seed, trajectory=trajectory, error=trajectory.error)


def run_dice_replicate(task: ReplicateTask) -> ReplicateOutcome:
    """Generate or reuse the network and run the full DICE experiment against the detector."""
    settings = task.config.dice
    d = settings.d if task.d is None else task.d
    try:
        g = task.network()
        cfg = DiceConfig(budget=settings.budget, d=d, seed=task.seed)
        trajectory = dice_run(g, task.detector, cfg, task.config.alpha)
    except Exception as exc:
        logger.exception("DICE replicate %d failed", task.index)
        return ReplicateOutcome(index=task.index, seed=task.seed, error=str(exc))
    return ReplicateOutcome(index=task.index, seed=task.seed, trajectory=trajectory)


def run_replicates(
    runner: Callable[[ReplicateTask], ReplicateOutcome],
    tasks: Sequence[ReplicateTask],
    workers: int = 1,
    description: str = "replicates",
) -> list[ReplicateOutcome]:
    """Run every task, in worker processes when ``workers > 1``, returning outcomes in task order."""
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            results = executor.map(runner, tasks)
            outcomes = list(tqdm(results, total=len(tasks), desc=description, leave=False))
    else:
        outcomes = [runner(task) for task in tqdm(tasks, desc=description, leave=False)]
    failed = sum(1 for outcome in outcomes if not outcome.ok)
    if failed:
        logger.warning("%d of %d %s failed", failed, len(outcomes), description)
    return outcomes


def build_tasks(
    config: ExperimentConfig,
    network: LoadedNetwork,
    detector: Detector | None = None,
    d: int | None = None,
    generator: GeneratorSpec | None = None,
) -> list[ReplicateTask]:
    return [
        ReplicateTask(
            index=index,
            seed=replicate_seed(config.seed, index),
            graph=network.graph,
            generator=generator or config.generator,
            config=config,
            detector=detector,
            d=d,
        )
        for index in range(config.replicates)
    ]


def mean_ci(values: Sequence[float]) -> tuple[float, float]:
    """Return the mean and the half-width ``1.96 * s / sqrt(R)`` of a normal 95% interval.

    The half-width is 0 for fewer than two values.
    """
    data = np.asarray(values, dtype=np.float64)
    if data.size == 0:
        return float("nan"), float("nan")
    if data.size < 2:
        return float(data.mean()), 0.0
    return float(data.mean()), float(Z_95 * data.std(ddof=1) / np.sqrt(data.size))


def _summarize(groups: dict[float, list[dict]], key: str, metrics: Sequence[str]) -> pd.DataFrame:
    columns = [key, "replicates"]
    columns += [f"{metric}_{suffix}" for metric in metrics for suffix in ("mean", "ci_low", "ci_high")]
    rows = []
    for position in sorted(groups):
        records = groups[position]
        row: dict[str, float | int] = {key: position, "replicates": len(records)}
        for metric in metrics:
            values = [r[metric] for r in records if r.get(metric) is not None and not pd.isna(r[metric])]
            mean, half = mean_ci(values)
            row[f"{metric}_mean"] = mean
            row[f"{metric}_ci_low"] = mean - half
            row[f"{metric}_ci_high"] = mean + half
        rows.append(row)
    return pd.DataFrame(rows, columns=columns)


def aggregate_roam(outcomes: Sequence[ReplicateOutcome]) -> pd.DataFrame:
    """Mean and 95% interval of every ROAM column per execution index, over the recorded rows."""
    groups: dict[float, list[dict]] = {}
    for outcome in outcomes:
        if outcome.trajectory is None:
            continue
        for record in outcome.trajectory.records():
            groups.setdefault(record["execution"], []).append(record)
    return _summarize(groups, "execution", ROAM_COLUMNS[1:])


def pct_grid() -> list[float]:
    step = 100.0 / PCT_BUCKETS
    return [step * i for i in range(PCT_BUCKETS + 1)]


def aggregate_dice(outcomes: Sequence[ReplicateOutcome]) -> pd.DataFrame:
    """Mean and 95% interval of concealment on a 0, 10, ..., 100 percent-of-rounds grid.

    Each replicate contributes the last round it completed at or below each grid point.
    """
    groups: dict[float, list[dict]] = {}
    for outcome in outcomes:
        if not outcome.ok:
            continue
        records = outcome.trajectory.records()
        for bucket in pct_grid():
            reached = [r for r in records if r["pct_rounds"] <= bucket + 1e-9]
            groups.setdefault(bucket, []).append(reached[-1])
    return _summarize(groups, "pct_rounds", DICE_COLUMNS[2:])


def final_mu(outcomes: Sequence[ReplicateOutcome]) -> float:
    finals = [outcome.trajectory.rows[-1].mu for outcome in outcomes if outcome.ok]
    return mean_ci(finals)[0]


def write_outputs(out: Path | None, outcomes: Sequence[ReplicateOutcome], aggregate: pd.DataFrame) -> str:
    """Write one CSV per replicate plus ``aggregate.csv`` into ``out``; return the aggregate CSV text."""
    text = frame_to_csv(aggregate)
    if out is None:
        return text
    out.mkdir(parents=True, exist_ok=True)
    for outcome in outcomes:
        if outcome.trajectory is not None:
            path = out / f"replicate_{outcome.index:03d}.csv"
            path.write_text(write_trajectory_csv(outcome.trajectory), encoding="utf-8", newline="\n")
    (out / "aggregate.csv").write_text(text, encoding="utf-8", newline="\n")
    logger.info("Wrote %d replicate files and aggregate.csv to %s", len(outcomes), out)
    return text
