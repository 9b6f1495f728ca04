from collections.abc import Iterable
from dataclasses import dataclass, field

Edge = tuple[int, int]


class GraphError(ValueError):
    """Raised when a graph operation would break the simple-graph invariants."""


@dataclass(frozen=True)
class RewiringPlan:
    """A set of edge additions and removals applied to a graph as one step.

    Attributes
    ----------
        additions (tuple[Edge, ...]): Edges to add, in the order they are performed.
        removals (tuple[Edge, ...]): Edges to remove, performed after the additions.
        budget (int | None): Declared budget; ``len(additions) + len(removals)`` may not exceed it.

    """

    additions: tuple[Edge, ...] = ()
    removals: tuple[Edge, ...] = ()
    budget: int | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if set(self.additions) & set(self.removals):
            msg = "a plan cannot add and remove the same edge"
            raise GraphError(msg)
        if self.budget is not None and self.cost > self.budget:
            msg = f"plan cost {self.cost} exceeds budget {self.budget}"
            raise GraphError(msg)

    @property
    def cost(self) -> int:
        return len(self.additions) + len(self.removals)

    def is_empty(self) -> bool:
        return not self.additions and not self.removals


class Graph:
    """A simple graph over the dense node ids ``0..n-1``.

    Graphs are immutable values: every mutation returns a new graph. Undirected graphs
    store each edge once logically and report ``successors(v) == predecessors(v)``.
    Neighbor tuples are sorted so that every "choice" has a lowest-id default.
    """

    __slots__ = ("_edge_set", "_pred", "_succ", "directed", "n")

    def __init__(self, n: int, edges: Iterable[Edge] = (), directed: bool = False) -> None:
        """Build a graph and validate every edge.

        Args:
        ----
            n (int): Number of nodes.
            edges (Iterable[Edge]): Edge pairs; undirected pairs may be given in either orientation.
            directed (bool): Whether ``(u, v)`` and ``(v, u)`` are distinct edges.

        Raises:
        ------
            GraphError: On an invalid node id, a self-loop or a duplicate edge.

        """
        if n < 0:
            msg = f"node count must be non-negative, got {n}"
            raise GraphError(msg)
        self.n = n
        self.directed = directed
        succ: list[set[int]] = [set() for _ in range(n)]
        pred: list[set[int]] = succ if not directed else [set() for _ in range(n)]
        edge_set: set[Edge] = set()
        for u, v in edges:
            key = self._check_new_edge(u, v, edge_set)
            edge_set.add(key)
            succ[u].add(v)
            pred[v].add(u)
        self._edge_set = frozenset(edge_set)
        self._succ = tuple(tuple(sorted(s)) for s in succ)
        self._pred = self._succ if not directed else tuple(tuple(sorted(p)) for p in pred)

    def _key(self, u: int, v: int) -> Edge:
        if self.directed or u < v:
            return (u, v)
        return (v, u)

    def _check_node(self, v: int) -> None:
        if not 0 <= v < self.n:
            msg = f"node {v} is not in a graph of {self.n} nodes"
            raise GraphError(msg)

    def _check_new_edge(self, u: int, v: int, edge_set: set[Edge] | frozenset[Edge]) -> Edge:
        self._check_node(u)
        self._check_node(v)
        if u == v:
            msg = f"self-loop ({u}, {v}) is not allowed"
            raise GraphError(msg)
        key = self._key(u, v)
        if key in edge_set:
            msg = f"edge ({u}, {v}) already exists"
            raise GraphError(msg)
        return key

    @property
    def nodes(self) -> range:
        return range(self.n)

    @property
    def edge_count(self) -> int:
        return len(self._edge_set)

    def edges(self) -> list[Edge]:
        """Return every edge once, sorted; undirected edges are reported as ``(min, max)``."""
        return sorted(self._edge_set)

    def has_edge(self, u: int, v: int) -> bool:
        return self._key(u, v) in self._edge_set

    def successors(self, v: int) -> tuple[int, ...]:
        return self._succ[v]

    def predecessors(self, v: int) -> tuple[int, ...]:
        return self._pred[v]

    def neighbors(self, v: int) -> tuple[int, ...]:
        """Return ``pred(v) ∪ succ(v)`` in ascending order."""
        if not self.directed:
            return self._succ[v]
        return tuple(sorted(set(self._succ[v]) | set(self._pred[v])))

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    def add_edge(self, u: int, v: int) -> "Graph":
        """Return a copy of the graph with the edge ``(u, v)`` added.

        Raises
        ------
            GraphError: On a self-loop, an invalid node or an edge that already exists.

        """
        self._check_new_edge(u, v, self._edge_set)
        return Graph(self.n, [*self._edge_set, (u, v)], self.directed)

    def remove_edge(self, u: int, v: int) -> "Graph":
        """Return a copy of the graph with the edge ``(u, v)`` removed.

        Raises
        ------
            GraphError: If the edge is not present.

        """
        key = self._key(u, v)
        if key not in self._edge_set:
            msg = f"edge ({u}, {v}) is not in the graph"
            raise GraphError(msg)
        return Graph(self.n, self._edge_set - {key}, self.directed)

    def apply(self, plan: RewiringPlan) -> "Graph":
        """Apply a rewiring plan: additions first, then removals.

        Raises
        ------
            GraphError: If an addition already exists or a removal is missing.

        """
        edges = set(self._edge_set)
        for u, v in plan.additions:
            edges.add(self._check_new_edge(u, v, edges))
        for u, v in plan.removals:
            key = self._key(u, v)
            if key not in self._edge_set:
                msg = f"cannot remove ({u}, {v}): not an edge of the current graph"
                raise GraphError(msg)
            edges.discard(key)
        return Graph(self.n, edges, self.directed)

    def non_edges(self) -> list[Edge]:
        """Return every pair that could be added without breaking simplicity."""
        pairs = []
        for u in range(self.n):
            start = 0 if self.directed else u + 1
            pairs.extend((u, v) for v in range(start, self.n) if v != u and not self.has_edge(u, v))
        return pairs

    def symmetrized(self) -> "Graph":
        """Return the undirected graph with an edge wherever either direction is present."""
        if not self.directed:
            return self
        return Graph(self.n, {(min(u, v), max(u, v)) for u, v in self._edge_set}, directed=False)

    def subgraph_edges(self, members: Iterable[int]) -> list[Edge]:
        """Return the edges with both endpoints inside ``members``."""
        inside = set(members)
        return [(u, v) for u, v in self.edges() if u in inside and v in inside]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.directed == other.directed and self._edge_set == other._edge_set

    def __hash__(self) -> int:
        return hash((self.n, self.directed, self._edge_set))

    def __repr__(self) -> str:
        kind = "directed" if self.directed else "undirected"
        return f"Graph(n={self.n}, edges={self.edge_count}, {kind})"
