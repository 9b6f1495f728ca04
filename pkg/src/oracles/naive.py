"""Definitional centralities computed from explicit shortest-path enumeration, for cross-checking."""

import numpy as np

from network import Graph

INF = np.inf


def all_pairs_distances(g: Graph) -> np.ndarray:
    """Floyd-Warshall over hop counts; unreachable pairs are ``inf``."""
    dist = np.full((g.n, g.n), INF)
    np.fill_diagonal(dist, 0.0)
    for u in g.nodes:
        for w in g.successors(u):
            dist[u, w] = 1.0
    for k in g.nodes:
        dist = np.minimum(dist, dist[:, [k]] + dist[[k], :])
    return dist


def shortest_paths(g: Graph, dist: np.ndarray, s: int, t: int) -> list[tuple[int, ...]]:
    """List every shortest ``s``-``t`` path by walking forward one hop at a time."""
    if not np.isfinite(dist[s, t]) or s == t:
        return []
    paths = []
    stack = [(s,)]
    while stack:
        path = stack.pop()
        tail = path[-1]
        if tail == t:
            paths.append(path)
            continue
        for w in g.successors(tail):
            if dist[s, w] == len(path) and dist[w, t] == dist[s, t] - len(path):
                stack.append((*path, w))
    return paths


def naive_degree(g: Graph) -> list[float]:
    neighbors: list[set[int]] = [set() for _ in g.nodes]
    for u, v in g.edges():
        neighbors[u].add(v)
        neighbors[v].add(u)
    scale = 2 * (g.n - 1) if g.directed else g.n - 1
    return [len(neighbors[v]) / scale for v in g.nodes]


def naive_closeness(g: Graph) -> list[float]:
    dist = all_pairs_distances(g)
    values = []
    for v in g.nodes:
        others = np.delete(dist[v], v)
        if not g.directed and np.all(np.isfinite(others)):
            values.append(float((g.n - 1) / others.sum()))
        else:
            finite = others[np.isfinite(others)]
            values.append(float(np.sum(1.0 / finite) / (g.n - 1)))
    return values


def naive_betweenness(g: Graph) -> list[float]:
    """Sum, over ordered pairs of other nodes, the fraction of shortest paths through each node."""
    dist = all_pairs_distances(g)
    totals = [0.0] * g.n
    for s in g.nodes:
        for t in g.nodes:
            paths = shortest_paths(g, dist, s, t)
            if not paths:
                continue
            for v in g.nodes:
                if v in (s, t):
                    continue
                through = sum(1 for path in paths if v in path)
                totals[v] += through / len(paths)
    scale = (g.n - 1) * (g.n - 2)
    return [total / scale for total in totals]


def count_shortest_paths(g: Graph, s: int) -> list[int]:
    dist = all_pairs_distances(g)
    return [1 if t == s else len(shortest_paths(g, dist, s, t)) for t in g.nodes]
