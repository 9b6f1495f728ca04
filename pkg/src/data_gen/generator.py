import logging
from enum import Enum

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from network import Edge, Graph

logger = logging.getLogger(__name__)


class GeneratorError(ValueError):
    """Raised on invalid random-graph parameters."""


class GraphFamily(str, Enum):
    """Random network families available to experiments."""

    SCALE_FREE = "scale-free"
    SMALL_WORLD = "small-world"
    RANDOM = "er"


class GeneratorSpec(BaseModel):
    """Parameters of one random network family plus its seed.

    ``m`` is the links-per-new-node of scale-free graphs, ``k`` and ``beta`` the lattice degree
    and rewiring probability of small-world graphs, and ``avg`` the expected average degree of
    Erdos-Renyi graphs.
    """

    model_config = ConfigDict(frozen=True)

    family: GraphFamily
    n: int = Field(ge=3)
    m: int | None = None
    k: int | None = None
    beta: float | None = Field(default=None, ge=0.0, le=1.0)
    avg: float | None = Field(default=None, ge=0.0)
    seed: int = 0

    @model_validator(mode="after")
    def check_family_parameters(self) -> "GeneratorSpec":
        match self.family:
            case GraphFamily.SCALE_FREE:
                if self.m is None or not 1 <= self.m < self.n:
                    msg = f"scale-free graphs need 1 <= m < n, got m={self.m}, n={self.n}"
                    raise ValueError(msg)
            case GraphFamily.SMALL_WORLD:
                if self.k is None or self.k % 2 or not 0 < self.k < self.n:
                    msg = f"small-world graphs need an even 0 < k < n, got k={self.k}, n={self.n}"
                    raise ValueError(msg)
                if self.beta is None:
                    msg = "small-world graphs need a rewiring probability beta"
                    raise ValueError(msg)
            case GraphFamily.RANDOM:
                if self.avg is None or self.avg > self.n - 1:
                    msg = f"random graphs need 0 <= avg <= n - 1, got avg={self.avg}, n={self.n}"
                    raise ValueError(msg)
        return self

    def with_seed(self, seed: int) -> "GeneratorSpec":
        return self.model_copy(update={"seed": seed})

    def describe(self) -> str:
        match self.family:
            case GraphFamily.SCALE_FREE:
                return f"scale-free(n={self.n}, m={self.m})"
            case GraphFamily.SMALL_WORLD:
                return f"small-world(n={self.n}, k={self.k}, beta={self.beta})"
            case GraphFamily.RANDOM:
                return f"er(n={self.n}, avg={self.avg})"


def barabasi_albert(n: int, m: int, seed: int) -> Graph:
    """Generate a preferential-attachment graph grown from an ``m``-clique.

    Args:
    ----
        n (int): Number of nodes.
        m (int): Links added with each new node.
        seed (int): Seed of the random stream.

    Returns:
    -------
        Graph: Undirected graph with ``m(m-1)/2 + (n-m)m`` edges.

    Raises:
    ------
        GeneratorError: Unless ``1 <= m < n``.

    """
    if not 1 <= m < n:
        msg = f"Barabasi-Albert needs 1 <= m < n, got m={m}, n={n}"
        raise GeneratorError(msg)
    rng = np.random.default_rng(seed)
    edges: list[Edge] = [(u, v) for u in range(m) for v in range(u + 1, m)]
    degree = np.zeros(n, dtype=np.float64)
    degree[:m] = m - 1
    for new in range(m, n):
        existing = degree[:new]
        total = existing.sum()
        weights = None if total == 0 else existing / total
        targets = rng.choice(new, size=m, replace=False, p=weights)
        for target in sorted(int(t) for t in targets):
            edges.append((target, new))
            degree[target] += 1
        degree[new] = m
    return Graph(n, edges)


def watts_strogatz(n: int, k: int, beta: float, seed: int) -> Graph:
    """Generate a small-world graph by rewiring a ring lattice.

    Each lattice edge ``(u, u+j)`` keeps ``u`` and, with probability ``beta``, moves its far
    endpoint to a uniformly drawn node that is neither ``u`` nor already adjacent to it.
    Nodes that are already adjacent to every other node keep their edge.

    Raises
    ------
        GeneratorError: Unless ``k`` is even, ``0 < k < n`` and ``0 <= beta <= 1``.

    """
    if k % 2 or not 0 < k < n or not 0.0 <= beta <= 1.0:
        msg = f"Watts-Strogatz needs an even 0 < k < n and beta in [0, 1], got n={n}, k={k}, beta={beta}"
        raise GeneratorError(msg)
    rng = np.random.default_rng(seed)
    adjacency: list[set[int]] = [set() for _ in range(n)]
    for u in range(n):
        for j in range(1, k // 2 + 1):
            v = (u + j) % n
            adjacency[u].add(v)
            adjacency[v].add(u)

    for j in range(1, k // 2 + 1):
        for u in range(n):
            v = (u + j) % n
            if v not in adjacency[u] or rng.random() >= beta:
                continue
            if len(adjacency[u]) >= n - 1:
                continue
            w = int(rng.integers(n))
            while w == u or w in adjacency[u]:
                w = int(rng.integers(n))
            adjacency[u].discard(v)
            adjacency[v].discard(u)
            adjacency[u].add(w)
            adjacency[w].add(u)

    return Graph(n, [(u, v) for u in range(n) for v in adjacency[u] if u < v])


def erdos_renyi(n: int, avg_degree: float, seed: int) -> Graph:
    """Generate ``G(n, p)`` with ``p = avg_degree / (n - 1)``.

    Raises
    ------
        GeneratorError: Unless ``n >= 2`` and ``0 <= avg_degree <= n - 1``.

    """
    if n < 2 or not 0.0 <= avg_degree <= n - 1:
        msg = f"Erdos-Renyi needs 0 <= avg <= n - 1, got avg={avg_degree}, n={n}"
        raise GeneratorError(msg)
    rng = np.random.default_rng(seed)
    p = avg_degree / (n - 1)
    rows, cols = np.triu_indices(n, k=1)
    present = rng.random(rows.size) < p
    return Graph(n, zip(rows[present].tolist(), cols[present].tolist(), strict=True))


def generate(spec: GeneratorSpec) -> Graph:
    """Build the network described by ``spec``."""
    match spec.family:
        case GraphFamily.SCALE_FREE:
            g = barabasi_albert(spec.n, spec.m, spec.seed)
        case GraphFamily.SMALL_WORLD:
            g = watts_strogatz(spec.n, spec.k, spec.beta, spec.seed)
        case GraphFamily.RANDOM:
            g = erdos_renyi(spec.n, spec.avg, spec.seed)
    logger.debug("Generated %s with seed %d: %d edges", spec.describe(), spec.seed, g.edge_count)
    return g


# Deterministic fixtures


def path_graph(n: int, directed: bool = False) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)], directed)


def cycle_graph(n: int, directed: bool = False) -> Graph:
    return Graph(n, [(i, (i + 1) % n) for i in range(n)], directed)


def star_graph(leaves: int) -> Graph:
    """Star with center 0 and leaves ``1..leaves``."""
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def complete_graph(n: int, directed: bool = False) -> Graph:
    if directed:
        return Graph(n, [(u, v) for u in range(n) for v in range(n) if u != v], directed=True)
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def disjoint_union(*graphs: Graph) -> Graph:
    """Place the graphs side by side, relabelling each after the previous ones."""
    directed = any(g.directed for g in graphs)
    edges: list[Edge] = []
    offset = 0
    for g in graphs:
        edges.extend((u + offset, v + offset) for u, v in g.edges())
        offset += g.n
    return Graph(offset, edges, directed)


def two_cliques_bridge(size: int) -> Graph:
    """Two ``size``-cliques joined by the single edge ``(size - 1, size)``."""
    return disjoint_union(complete_graph(size), complete_graph(size)).add_edge(size - 1, size)


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, outer + spokes + inner)
