import itertools
import logging
import math
from collections.abc import Iterable, Mapping, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum

import numpy as np

from harness.seeding import derive_rng
from harness.settings import DEFAULT_IC_PROBABILITY, DEFAULT_MC_SAMPLES, MC_CHUNK_SIZE
from network import Edge, Graph

logger = logging.getLogger(__name__)

MAX_UNCERTAIN_ARCS = 20
MAX_THRESHOLD_VECTORS = 1_000_000


class InfluenceError(ValueError):
    """Raised on invalid diffusion parameters or oversized exact computations."""


class InfluenceModel(str, Enum):
    """Diffusion models: independent cascade and linear threshold."""

    IC = "ic"
    LT = "lt"


@dataclass(frozen=True)
class InfluenceConfig:
    """How influence is estimated.

    ``p`` is the uniform activation probability of every arc and only matters for IC.
    """

    model: InfluenceModel = InfluenceModel.IC
    p: float = DEFAULT_IC_PROBABILITY
    samples: int = DEFAULT_MC_SAMPLES
    seed: int = 0

    def __post_init__(self) -> None:
        if not 0.0 <= self.p <= 1.0:
            msg = f"activation probability must lie in [0, 1], got {self.p}"
            raise InfluenceError(msg)
        if self.samples < 1:
            msg = f"sample count must be positive, got {self.samples}"
            raise InfluenceError(msg)

    def with_seed(self, seed: int) -> "InfluenceConfig":
        return InfluenceConfig(model=self.model, p=self.p, samples=self.samples, seed=seed)


@dataclass(frozen=True)
class CascadeResult:
    activated: frozenset[int]
    rounds: int


@dataclass(frozen=True)
class InfluenceEstimate:
    """Activation probability of every node given the seed ``source``; ``total`` is their sum."""

    source: int
    total: float
    per_node: tuple[float, ...]


def _check_seeds(g: Graph, seeds: Iterable[int]) -> list[int]:
    ordered = sorted(set(seeds))
    if not ordered:
        msg = "a cascade needs at least one seed"
        raise InfluenceError(msg)
    for v in ordered:
        if not 0 <= v < g.n:
            msg = f"seed {v} is not a node of the graph"
            raise InfluenceError(msg)
    return ordered


def _draw_thresholds(g: Graph, rng: np.random.Generator) -> np.ndarray:
    in_degree = np.array([len(g.predecessors(v)) for v in g.nodes], dtype=np.int64)
    return rng.integers(0, in_degree + 1)


def _lt_propagate(g: Graph, seeds: Sequence[int], thresholds: Sequence[int]) -> CascadeResult:
    active = set(seeds)
    rounds = 0
    while True:
        new = [
            v
            for v in g.nodes
            if v not in active and sum(1 for u in g.predecessors(v) if u in active) >= thresholds[v]
        ]
        if not new:
            return CascadeResult(activated=frozenset(active), rounds=rounds)
        active.update(new)
        rounds += 1


def simulate_cascade(
    g: Graph,
    seeds: Iterable[int],
    cfg: InfluenceConfig,
    rng: np.random.Generator,
    thresholds: Sequence[int] | None = None,
) -> CascadeResult:
    """Run one diffusion from ``seeds`` until no node activates.

    IC gives every newly activated node one Bernoulli(p) attempt on each inactive successor,
    visiting nodes in ascending id order. LT draws every threshold uniformly from
    ``{0, ..., |pred(v)|}`` (unless ``thresholds`` fixes them) and activates a node once that
    many predecessors are active. A threshold of 0 activates the node in the first round.

    Raises
    ------
        InfluenceError: If ``seeds`` is empty or names an unknown node.

    """
    ordered = _check_seeds(g, seeds)
    if cfg.model is InfluenceModel.LT:
        drawn = list(thresholds) if thresholds is not None else _draw_thresholds(g, rng).tolist()
        return _lt_propagate(g, ordered, drawn)

    active = set(ordered)
    frontier = ordered
    rounds = 0
    while frontier:
        newly_active = []
        for u in frontier:
            for w in g.successors(u):
                if w not in active and rng.random() < cfg.p:
                    active.add(w)
                    newly_active.append(w)
        frontier = sorted(newly_active)
        if frontier:
            rounds += 1
    return CascadeResult(activated=frozenset(active), rounds=rounds)


class _ArcTable:
    """Arcs sorted by head so per-node reductions are one ``reduceat`` call."""

    def __init__(self, g: Graph) -> None:
        arcs = [(u, w) for u in g.nodes for w in g.successors(u)]
        arcs.sort(key=lambda arc: (arc[1], arc[0]))
        self.tail = np.array([u for u, _ in arcs], dtype=np.int64)
        head = np.array([w for _, w in arcs], dtype=np.int64)
        if head.size:
            self.heads, self.starts = np.unique(head, return_index=True)
        else:
            self.heads = self.starts = np.zeros(0, dtype=np.int64)
        self.in_degree = np.array([len(g.predecessors(v)) for v in g.nodes], dtype=np.int64)

    @property
    def size(self) -> int:
        return int(self.tail.size)


def _ic_chunk(table: _ArcTable, n: int, v: int, p: float, samples: int, rng: np.random.Generator) -> np.ndarray:
    active = np.zeros((samples, n), dtype=bool)
    active[:, v] = True
    if table.size == 0:
        return active.sum(axis=0)
    frontier = active.copy()
    while frontier.any():
        fired = frontier[:, table.tail] & (rng.random((samples, table.size)) < p)
        reached = np.zeros_like(active)
        reached[:, table.heads] = np.logical_or.reduceat(fired, table.starts, axis=1)
        frontier = reached & ~active
        active |= frontier
    return active.sum(axis=0)


def _lt_chunk(
    table: _ArcTable, n: int, v: int, samples: int, rng: np.random.Generator, fixed: np.ndarray | None
) -> np.ndarray:
    thresholds = fixed if fixed is not None else rng.integers(0, table.in_degree + 1, size=(samples, n))
    active = np.zeros((samples, n), dtype=bool)
    active[:, v] = True
    while True:
        counts = np.zeros((samples, n), dtype=np.int64)
        if table.size:
            counts[:, table.heads] = np.add.reduceat(active[:, table.tail].astype(np.int64), table.starts, axis=1)
        newly_active = ~active & (counts >= thresholds)
        if not newly_active.any():
            return active.sum(axis=0)
        active |= newly_active


def estimate_influence(
    g: Graph,
    v: int,
    cfg: InfluenceConfig,
    workers: int = 1,
    thresholds: Sequence[int] | None = None,
) -> InfluenceEstimate:
    """Estimate the influence of ``v`` by Monte Carlo.

    Samples are split into fixed-size chunks, each with its own seed stream derived from
    ``cfg.seed`` and the chunk index, and the chunk counts are summed in chunk order, so the
    estimate is the same for any ``workers``.

    Args:
    ----
        g (Graph): The network.
        v (int): The seed node.
        cfg (InfluenceConfig): Model, probability, sample count and seed.
        workers (int): Threads evaluating chunks.
        thresholds (Sequence[int] | None): Fixed LT thresholds instead of random ones.

    Returns:
    -------
        InfluenceEstimate: Per-node activation frequencies with ``per_node[v] = 0``.

    """
    _check_seeds(g, [v])
    table = _ArcTable(g)
    fixed = None if thresholds is None else np.asarray(thresholds, dtype=np.int64)
    sizes = [min(MC_CHUNK_SIZE, cfg.samples - start) for start in range(0, cfg.samples, MC_CHUNK_SIZE)]

    def run_chunk(chunk: int) -> np.ndarray:
        rng = derive_rng(cfg.seed, chunk)
        if cfg.model is InfluenceModel.IC:
            return _ic_chunk(table, g.n, v, cfg.p, sizes[chunk], rng)
        return _lt_chunk(table, g.n, v, sizes[chunk], rng, fixed)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            counts = list(executor.map(run_chunk, range(len(sizes))))
    else:
        counts = [run_chunk(chunk) for chunk in range(len(sizes))]

    activated = np.zeros(g.n, dtype=np.int64)
    for chunk_counts in counts:
        activated += chunk_counts
    per_node = activated / cfg.samples
    per_node[v] = 0.0
    return InfluenceEstimate(source=v, total=float(per_node.sum()), per_node=tuple(per_node.tolist()))


def exact_influence_ic(
    g: Graph,
    v: int,
    p: float = DEFAULT_IC_PROBABILITY,
    arc_probabilities: Mapping[Edge, float] | None = None,
) -> InfluenceEstimate:
    """Compute IC influence exactly by enumerating live-edge outcomes.

    Each arc is live independently with its activation probability, and a node is activated
    iff it is reachable from ``v`` over live arcs. Undirected graphs with a uniform ``p`` use
    one coin per edge. Only outcomes of arcs leaving the reached set are branched on, so arcs
    that never get an attempt are never enumerated.

    Args:
    ----
        g (Graph): The network.
        v (int): The seed node.
        p (float): Uniform activation probability.
        arc_probabilities (Mapping[Edge, float] | None): Per-arc probabilities ``(tail, head)``
            replacing ``p``; arcs missing from the map have probability 0.

    Raises:
    ------
        InfluenceError: If more than 20 arcs have a probability strictly between 0 and 1.

    """
    _check_seeds(g, [v])
    # Each unit is a group of arcs that share one coin.
    units: list[tuple[tuple[Edge, ...], float]] = []
    if arc_probabilities is None and not g.directed:
        units = [(((a, b), (b, a)), p) for a, b in g.edges()]
    else:
        for u in g.nodes:
            for w in g.successors(u):
                prob = p if arc_probabilities is None else arc_probabilities.get((u, w), 0.0)
                if prob > 0.0:
                    units.append((((u, w),), prob))

    certain = [arcs for arcs, prob in units if prob >= 1.0]
    uncertain = [(arcs, prob) for arcs, prob in units if prob < 1.0]
    if len(uncertain) > MAX_UNCERTAIN_ARCS:
        msg = f"exact IC enumeration supports at most {MAX_UNCERTAIN_ARCS} uncertain edges, got {len(uncertain)}"
        raise InfluenceError(msg)

    live_out: list[list[int]] = [[] for _ in g.nodes]
    for arcs in certain:
        for a, b in arcs:
            live_out[a].append(b)
    pending_out: list[list[int]] = [[] for _ in g.nodes]
    for index, (arcs, _) in enumerate(uncertain):
        for a, _b in arcs:
            pending_out[a].append(index)

    per_node = np.zeros(g.n, dtype=np.float64)

    def close(reached: set[int], live: frozenset[int]) -> set[int]:
        stack = list(reached)
        reached = set(reached)
        while stack:
            a = stack.pop()
            heads = list(live_out[a])
            for index in pending_out[a]:
                if index in live:
                    heads.extend(b for tail, b in uncertain[index][0] if tail == a)
            for b in heads:
                if b not in reached:
                    reached.add(b)
                    stack.append(b)
        return reached

    def explore(reached: set[int], live: frozenset[int], decided: frozenset[int], weight: float) -> None:
        reached = close(reached, live)
        for a in sorted(reached):
            for index in pending_out[a]:
                if index in decided:
                    continue
                if any(tail in reached and head not in reached for tail, head in uncertain[index][0]):
                    prob = uncertain[index][1]
                    explore(reached, live | {index}, decided | {index}, weight * prob)
                    explore(reached, live, decided | {index}, weight * (1.0 - prob))
                    return
        for node in reached:
            per_node[node] += weight

    explore({v}, frozenset(), frozenset(), 1.0)
    per_node[v] = 0.0
    return InfluenceEstimate(source=v, total=float(per_node.sum()), per_node=tuple(per_node.tolist()))


def exact_influence_lt(g: Graph, v: int, thresholds: Sequence[int] | None = None) -> InfluenceEstimate:
    """Compute LT influence exactly by averaging over every threshold vector.

    With ``thresholds`` the cascade is deterministic and run once.

    Raises
    ------
        InfluenceError: If there are more than a million threshold vectors.

    """
    _check_seeds(g, [v])
    per_node = np.zeros(g.n, dtype=np.float64)
    if thresholds is not None:
        for node in _lt_propagate(g, [v], thresholds).activated:
            per_node[node] = 1.0
    else:
        others = [w for w in g.nodes if w != v]
        choices = [range(len(g.predecessors(w)) + 1) for w in others]
        space = math.prod(len(c) for c in choices)
        if space > MAX_THRESHOLD_VECTORS:
            msg = f"exact LT enumeration supports at most {MAX_THRESHOLD_VECTORS} threshold vectors, got {space}"
            raise InfluenceError(msg)
        drawn = [0] * g.n
        for vector in itertools.product(*choices):
            for w, t in zip(others, vector, strict=True):
                drawn[w] = t
            for node in _lt_propagate(g, [v], drawn).activated:
                per_node[node] += 1.0
        per_node /= space
    per_node[v] = 0.0
    return InfluenceEstimate(source=v, total=float(per_node.sum()), per_node=tuple(per_node.tolist()))


def relative_influence(current: InfluenceEstimate, baseline: InfluenceEstimate) -> float:
    """Return ``current.total / baseline.total``; a zero baseline maps to 1.0 when unchanged."""
    if baseline.total == 0.0:
        return 1.0 if current.total == 0.0 else math.inf
    return current.total / baseline.total
