from dataclasses import dataclass
from enum import Enum

import numpy as np

from network import UNREACHABLE, Graph, GraphError, bfs_distances, brandes_pass

RANK_TOLERANCE = 1e-12


class CentralityKind(str, Enum):
    """The three centrality measures an evader tries to lower."""

    DEGREE = "degree"
    CLOSENESS = "closeness"
    BETWEENNESS = "betweenness"


@dataclass(frozen=True)
class RankEntry:
    node: int
    value: float
    rank: int


@dataclass(frozen=True)
class Ranking:
    """Nodes ordered by decreasing centrality, with competition ranks ("1224") for ties."""

    kind: CentralityKind
    entries: tuple[RankEntry, ...]

    def rank_of(self, v: int) -> int:
        for entry in self.entries:
            if entry.node == v:
                return entry.rank
        msg = f"node {v} is not ranked"
        raise GraphError(msg)

    def as_dict(self) -> dict[int, int]:
        return {entry.node: entry.rank for entry in self.entries}


def _require_nodes(g: Graph, minimum: int, measure: str) -> None:
    if g.n < minimum:
        msg = f"{measure} centrality needs at least {minimum} nodes, got {g.n}"
        raise GraphError(msg)


def degree_centrality(g: Graph, v: int) -> float:
    """Return ``|N(v)|/(n-1)``, or ``|N(v)|/(2(n-1))`` with ``N = pred ∪ succ`` when directed."""
    _require_nodes(g, 2, "degree")
    scale = 2 * (g.n - 1) if g.directed else g.n - 1
    return g.degree(v) / scale


def closeness_centrality(g: Graph, v: int) -> float:
    """Return the closeness of ``v``.

    Undirected nodes that reach every other node use ``(n-1)/sum(d)``. Directed graphs, and
    undirected graphs with unreachable pairs, use the harmonic form ``sum(1/d)/(n-1)`` where
    unreachable nodes contribute nothing.
    """
    _require_nodes(g, 2, "closeness")
    dist = bfs_distances(g, v)
    others = [d for u, d in enumerate(dist) if u != v]
    if not g.directed and UNREACHABLE not in others:
        return (g.n - 1) / sum(others)
    return sum(1.0 / d for d in others if d != UNREACHABLE) / (g.n - 1)


def betweenness_centrality(g: Graph) -> list[float]:
    """Return the normalized betweenness of every node.

    Dependencies are accumulated over ordered source-target pairs, so both orientations use
    the prefactor ``1/((n-1)(n-2))``; for undirected graphs this equals ``2/((n-1)(n-2))``
    over unordered pairs.

    Raises
    ------
        GraphError: If the graph has fewer than 3 nodes.

    """
    _require_nodes(g, 3, "betweenness")
    totals = np.zeros(g.n, dtype=np.float64)
    for src in g.nodes:
        delta = np.asarray(brandes_pass(g, src).delta)
        delta[src] = 0.0
        totals += delta
    return (totals / ((g.n - 1) * (g.n - 2))).tolist()


def centralities(g: Graph, kind: CentralityKind) -> list[float]:
    """Return ``kind`` centrality for every node, indexed by node id."""
    match kind:
        case CentralityKind.DEGREE:
            return [degree_centrality(g, v) for v in g.nodes]
        case CentralityKind.CLOSENESS:
            return [closeness_centrality(g, v) for v in g.nodes]
        case CentralityKind.BETWEENNESS:
            return betweenness_centrality(g)


def centrality_of(g: Graph, v: int, kind: CentralityKind) -> float:
    match kind:
        case CentralityKind.DEGREE:
            return degree_centrality(g, v)
        case CentralityKind.CLOSENESS:
            return closeness_centrality(g, v)
        case CentralityKind.BETWEENNESS:
            return betweenness_centrality(g)[v]


def rank_values(values: list[float], kind: CentralityKind) -> Ranking:
    """Competition-rank already computed centrality values."""
    order = sorted(range(len(values)), key=lambda v: (-values[v], v))
    entries = []
    rank = 0
    previous = None
    for position, node in enumerate(order, start=1):
        value = values[node]
        if previous is None or value < previous - RANK_TOLERANCE:
            rank = position
            previous = value
        entries.append(RankEntry(node=node, value=value, rank=rank))
    return Ranking(kind=kind, entries=tuple(entries))


def ranking(g: Graph, kind: CentralityKind) -> Ranking:
    _require_nodes(g, 3, "ranked")
    return rank_values(centralities(g, kind), kind)


def source_ranks(g: Graph, v: int) -> dict[CentralityKind, int]:
    """Return the rank of ``v`` under each of the three measures."""
    return {kind: ranking(g, kind).rank_of(v) for kind in CentralityKind}


def select_source_node(g: Graph, rng: np.random.Generator) -> int:
    """Pick the node with the lowest sum of its three centrality ranks.

    Ties are broken uniformly at random with ``rng``.
    """
    _require_nodes(g, 3, "ranked")
    totals = [0] * g.n
    for kind in CentralityKind:
        for node, rank in ranking(g, kind).as_dict().items():
            totals[node] += rank
    best = min(totals)
    candidates = [v for v in g.nodes if totals[v] == best]
    return int(rng.choice(candidates))
