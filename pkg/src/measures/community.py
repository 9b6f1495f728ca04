import logging
from collections.abc import Iterable
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from network import Edge, Graph, brandes_pass, components

logger = logging.getLogger(__name__)

GAIN_TOLERANCE = 1e-12


class CommunityError(ValueError):
    """Raised on invalid partitions or unscorable graphs."""


@dataclass(frozen=True)
class CommunityStructure:
    """A disjoint, exhaustive partition of the nodes ``0..n-1``.

    Communities are stored as frozensets ordered by their smallest member so that equal
    partitions compare equal. ``score`` is the modularity reported by the detector that
    produced the partition, if any.
    """

    communities: tuple[frozenset[int], ...]
    score: float | None = field(default=None, compare=False)

    @classmethod
    def from_sets(cls, sets: Iterable[Iterable[int]], n: int, score: float | None = None) -> "CommunityStructure":
        """Validate and canonicalize a partition.

        Raises
        ------
            CommunityError: On an empty community, an unknown node, overlap or a missing node.

        """
        communities = [frozenset(s) for s in sets]
        seen: set[int] = set()
        for community in communities:
            if not community:
                msg = "communities must be non-empty"
                raise CommunityError(msg)
            outside = [v for v in community if not 0 <= v < n]
            if outside:
                msg = f"node {outside[0]} is not in a graph of {n} nodes"
                raise CommunityError(msg)
            overlap = seen & community
            if overlap:
                msg = f"node {min(overlap)} appears in more than one community"
                raise CommunityError(msg)
            seen |= community
        if len(seen) != n:
            missing = min(set(range(n)) - seen)
            msg = f"node {missing} is not assigned to any community"
            raise CommunityError(msg)
        return cls(communities=tuple(sorted(communities, key=min)), score=score)

    @classmethod
    def singletons(cls, n: int) -> "CommunityStructure":
        return cls.from_sets(([v] for v in range(n)), n)

    @property
    def n(self) -> int:
        return sum(len(c) for c in self.communities)

    def membership(self) -> list[int]:
        """Return the index of each node's community."""
        labels = [0] * self.n
        for index, community in enumerate(self.communities):
            for v in community:
                labels[v] = index
        return labels

    def __len__(self) -> int:
        return len(self.communities)

    def __iter__(self):  # noqa: ANN204
        return iter(self.communities)


def modularity(g: Graph, cs: CommunityStructure) -> float:
    """Return ``Q = sum_c [e_c/|E| - (deg_c/(2|E|))^2]``; directed graphs are symmetrized.

    Raises
    ------
        CommunityError: If the graph has no edges or ``cs`` does not cover its nodes.

    """
    g = g.symmetrized()
    if g.edge_count == 0:
        msg = "modularity is undefined on a graph without edges"
        raise CommunityError(msg)
    if cs.n != g.n:
        msg = f"partition covers {cs.n} nodes but the graph has {g.n}"
        raise CommunityError(msg)
    labels = cs.membership()
    m = g.edge_count
    internal = np.zeros(len(cs), dtype=np.float64)
    degree = np.zeros(len(cs), dtype=np.float64)
    for u, v in g.edges():
        if labels[u] == labels[v]:
            internal[labels[u]] += 1
        degree[labels[u]] += 1
        degree[labels[v]] += 1
    return float(np.sum(internal / m - (degree / (2 * m)) ** 2))


# Louvain


def _louvain_level(
    adj: list[dict[int, float]], loops: list[float], rng: np.random.Generator
) -> tuple[list[int], bool]:
    """Move nodes between communities until no move gains modularity."""
    size = len(adj)
    k = [sum(adj[i].values()) + 2 * loops[i] for i in range(size)]
    two_m = sum(k)
    community = list(range(size))
    tot = list(k)
    improved = False
    moved = True
    while moved:
        moved = False
        for i in rng.permutation(size).tolist():
            own = community[i]
            links: dict[int, float] = {}
            for j, w in adj[i].items():
                links[community[j]] = links.get(community[j], 0.0) + w
            tot[own] -= k[i]
            best = own
            best_gain = links.get(own, 0.0) - tot[own] * k[i] / two_m
            for candidate in sorted(links):
                gain = links[candidate] - tot[candidate] * k[i] / two_m
                if gain > best_gain + GAIN_TOLERANCE:
                    best, best_gain = candidate, gain
            tot[best] += k[i]
            if best != own:
                community[i] = best
                moved = improved = True
    return community, improved


def _aggregate(
    adj: list[dict[int, float]], loops: list[float], community: list[int]
) -> tuple[list[dict[int, float]], list[float], list[int]]:
    relabel: dict[int, int] = {}
    for c in community:
        relabel.setdefault(c, len(relabel))
    mapping = [relabel[c] for c in community]
    new_adj: list[dict[int, float]] = [{} for _ in relabel]
    new_loops = [0.0] * len(relabel)
    for i, neighbors in enumerate(adj):
        ci = mapping[i]
        new_loops[ci] += loops[i]
        for j, w in neighbors.items():
            cj = mapping[j]
            if ci == cj:
                # each internal edge is seen from both endpoints
                new_loops[ci] += w / 2
            else:
                new_adj[ci][cj] = new_adj[ci].get(cj, 0.0) + w
    return new_adj, new_loops, mapping


def louvain(g: Graph, seed: int) -> CommunityStructure:
    """Detect communities by Louvain modularity optimization.

    Alternates a node-move phase, visiting nodes in a seed-shuffled order, with an aggregation
    phase that collapses communities into single nodes, until a level makes no move.
    """
    g = g.symmetrized()
    if g.edge_count == 0:
        return CommunityStructure.singletons(g.n)
    rng = np.random.default_rng(seed)
    adj: list[dict[int, float]] = [{w: 1.0 for w in g.neighbors(v)} for v in g.nodes]
    loops = [0.0] * g.n
    assignment = list(g.nodes)
    while True:
        community, improved = _louvain_level(adj, loops, rng)
        if not improved:
            break
        adj, loops, mapping = _aggregate(adj, loops, community)
        assignment = [mapping[a] for a in assignment]

    m = g.edge_count
    k = [sum(adj[i].values()) + 2 * loops[i] for i in range(len(adj))]
    score = sum(loops[i] / m - (k[i] / (2 * m)) ** 2 for i in range(len(adj)))
    groups: dict[int, list[int]] = {}
    for v, a in enumerate(assignment):
        groups.setdefault(a, []).append(v)
    logger.debug("Louvain found %d communities with Q=%.6f", len(groups), score)
    return CommunityStructure.from_sets(groups.values(), g.n, score=score)


# Clauset-Newman-Moore


def greedy_cnm(g: Graph) -> CommunityStructure:
    """Agglomerate communities greedily by modularity gain and keep the best partition seen.

    Starting from singletons, the connected pair with the largest ``2(e_ij - a_i a_j)`` is
    merged (ties to the lowest indices) until no connected pair remains.
    """
    g = g.symmetrized()
    if g.edge_count == 0:
        return CommunityStructure.singletons(g.n)
    n = g.n
    two_m = 2.0 * g.edge_count
    e = np.zeros((n, n), dtype=np.float64)
    for u, v in g.edges():
        e[u, v] = e[v, u] = 1.0 / two_m
    a = e.sum(axis=1)
    members: list[set[int] | None] = [{v} for v in range(n)]
    active = np.ones(n, dtype=bool)
    upper = np.triu(np.ones((n, n), dtype=bool), k=1)

    q = float(-np.sum(a**2))
    best_q = q
    best = [set(s) for s in members if s is not None]
    while True:
        mask = upper & (e > 0) & active[:, None] & active[None, :]
        if not mask.any():
            break
        gain = np.where(mask, 2.0 * (e - np.outer(a, a)), -np.inf)
        i, j = np.unravel_index(int(np.argmax(gain)), gain.shape)
        q += float(gain[i, j])
        e[i, :] += e[j, :]
        e[:, i] += e[:, j]
        e[j, :] = 0.0
        e[:, j] = 0.0
        a[i] += a[j]
        a[j] = 0.0
        active[j] = False
        members[i] |= members[j]
        members[j] = None
        if q > best_q + GAIN_TOLERANCE:
            best_q = q
            best = [set(s) for s in members if s is not None]
    return CommunityStructure.from_sets(best, n, score=best_q)


# Girvan-Newman


def _edge_betweenness(g: Graph, sources: Iterable[int]) -> dict[Edge, float]:
    scores: dict[Edge, float] = {}
    for src in sources:
        result = brandes_pass(g, src)
        for w in result.order:
            for v in result.preds[w]:
                edge = (min(v, w), max(v, w))
                scores[edge] = scores.get(edge, 0.0) + result.sigma[v] / result.sigma[w] * (1.0 + result.delta[w])
    return scores


def girvan_newman(g: Graph) -> CommunityStructure:
    """Remove maximum edge-betweenness edges one at a time and keep the best component split.

    Betweenness is recomputed only inside the component that lost an edge; ties remove the
    lowest edge. Modularity of every component partition is scored on the original graph.
    """
    original = g.symmetrized()
    if original.edge_count == 0:
        return CommunityStructure.singletons(original.n)
    g = original
    parts = components(g)
    best = CommunityStructure.from_sets(parts, g.n)
    best_q = modularity(original, best)
    scores = _edge_betweenness(g, g.nodes)
    while g.edge_count:
        top = max(scores.values())
        u, v = min(edge for edge, score in scores.items() if score >= top - GAIN_TOLERANCE)
        g = g.remove_edge(u, v)
        affected = next(c for c in parts if u in c)
        scores = {edge: s for edge, s in scores.items() if edge[0] not in affected}
        scores.update(_edge_betweenness(g, sorted(affected)))
        new_parts = components(g)
        if len(new_parts) > len(parts):
            candidate = CommunityStructure.from_sets(new_parts, g.n)
            q = modularity(original, candidate)
            if q > best_q + GAIN_TOLERANCE:
                best, best_q = candidate, q
        parts = new_parts
    logger.debug("Girvan-Newman best split has %d communities with Q=%.6f", len(best), best_q)
    return CommunityStructure(communities=best.communities, score=best_q)


# Detector dispatch


class DetectorKind(str, Enum):
    LOUVAIN = "louvain"
    CNM = "cnm"
    GIRVAN_NEWMAN = "gn"
    EXTERNAL = "external"


@dataclass(frozen=True)
class Detector:
    """A community detector; ``External`` replays a partition produced by a third-party tool."""

    kind: DetectorKind
    partition: CommunityStructure | None = None
    source: str | None = None

    @property
    def label(self) -> str:
        if self.kind is DetectorKind.EXTERNAL:
            return f"external:{self.source}"
        return self.kind.value


def detect(g: Graph, detector: Detector, seed: int = 0) -> CommunityStructure:
    """Run ``detector`` on ``g``; only Louvain uses ``seed``.

    Raises
    ------
        CommunityError: If an external partition is missing or does not fit the graph.

    """
    match detector.kind:
        case DetectorKind.LOUVAIN:
            return louvain(g, seed)
        case DetectorKind.CNM:
            return greedy_cnm(g)
        case DetectorKind.GIRVAN_NEWMAN:
            return girvan_newman(g)
        case DetectorKind.EXTERNAL:
            if detector.partition is None or detector.partition.n != g.n:
                msg = f"external partition {detector.source} does not cover the {g.n} graph nodes"
                raise CommunityError(msg)
            return detector.partition
