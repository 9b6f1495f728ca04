from collections import deque
from dataclasses import dataclass

from network.graph import Graph

UNREACHABLE = -1


@dataclass
class BrandesPass:
    """Single-source shortest-path counts and dependencies.

    Attributes
    ----------
        source (int): The source node.
        dist (list[int]): BFS distance to each node, ``UNREACHABLE`` when there is no path.
        sigma (list[int]): Number of distinct shortest source-to-node paths.
        order (list[int]): Nodes in non-decreasing distance order (reachable nodes only).
        preds (list[list[int]]): Shortest-path predecessors of each node.
        delta (list[float]): Accumulated pair dependency of ``source`` on each node.

    """

    source: int
    dist: list[int]
    sigma: list[int]
    order: list[int]
    preds: list[list[int]]
    delta: list[float]


def bfs_distances(g: Graph, src: int) -> list[int]:
    """Return hop distances from ``src`` following edge directions.

    Args:
    ----
        g (Graph): The graph.
        src (int): Source node.

    Returns:
    -------
        list[int]: ``dist[v]`` is the distance to ``v`` or ``UNREACHABLE``.

    """
    dist = [UNREACHABLE] * g.n
    dist[src] = 0
    queue = deque([src])
    while queue:
        u = queue.popleft()
        for w in g.successors(u):
            if dist[w] == UNREACHABLE:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def _reversed_distances(g: Graph, src: int) -> list[int]:
    dist = [UNREACHABLE] * g.n
    dist[src] = 0
    queue = deque([src])
    while queue:
        u = queue.popleft()
        for w in g.predecessors(u):
            if dist[w] == UNREACHABLE:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def is_connected(g: Graph) -> bool:
    """Return whether every ordered pair is joined by a path (strong connectivity when directed)."""
    if g.n <= 1:
        return True
    if UNREACHABLE in bfs_distances(g, 0):
        return False
    if not g.directed:
        return True
    return UNREACHABLE not in _reversed_distances(g, 0)


def components(g: Graph) -> list[frozenset[int]]:
    """Return the weakly connected components, ordered by their smallest node."""
    seen = [False] * g.n
    found = []
    for start in g.nodes:
        if seen[start]:
            continue
        seen[start] = True
        members = [start]
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for w in g.neighbors(u):
                if not seen[w]:
                    seen[w] = True
                    members.append(w)
                    queue.append(w)
        found.append(frozenset(members))
    return found


def brandes_pass(g: Graph, src: int) -> BrandesPass:
    """Run one accumulation pass of Brandes' algorithm from ``src``.

    Counts shortest paths in BFS order, then walks the nodes back from the farthest
    to accumulate ``delta[v] = sum over w with v in preds[w] of sigma[v]/sigma[w] * (1 + delta[w])``.
    """
    dist = [UNREACHABLE] * g.n
    sigma = [0] * g.n
    preds: list[list[int]] = [[] for _ in range(g.n)]
    dist[src] = 0
    sigma[src] = 1
    order = []
    queue = deque([src])
    while queue:
        u = queue.popleft()
        order.append(u)
        for w in g.successors(u):
            if dist[w] == UNREACHABLE:
                dist[w] = dist[u] + 1
                queue.append(w)
            if dist[w] == dist[u] + 1:
                sigma[w] += sigma[u]
                preds[w].append(u)

    delta = [0.0] * g.n
    for w in reversed(order):
        for v in preds[w]:
            delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w])
    return BrandesPass(source=src, dist=dist, sigma=sigma, order=order, preds=preds, delta=delta)
