import networkx as nx
import numpy as np
import pytest

from data_gen import barabasi_albert
from network import Graph


def to_networkx(g: Graph) -> nx.Graph:
    """Copy a graph into networkx so its algorithms can serve as an independent oracle."""
    other = nx.DiGraph() if g.directed else nx.Graph()
    other.add_nodes_from(g.nodes)
    other.add_edges_from(g.edges())
    return other


def from_networkx(other: nx.Graph) -> Graph:
    relabelled = nx.convert_node_labels_to_integers(other)
    return Graph(relabelled.number_of_nodes(), relabelled.edges(), relabelled.is_directed())


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(12345)


@pytest.fixture
def scale_free() -> Graph:
    return barabasi_albert(60, 3, seed=7)


@pytest.fixture
def random_graphs() -> list[Graph]:
    """A mix of small random directed and undirected graphs, connected or not."""
    generator = np.random.default_rng(2024)
    graphs = []
    for index in range(30):
        n = int(generator.integers(4, 10))
        directed = bool(index % 2)
        pairs = [(u, v) for u in range(n) for v in range(n) if u != v and (directed or u < v)]
        keep = generator.random(len(pairs)) < 0.35
        graphs.append(Graph(n, [pair for pair, kept in zip(pairs, keep, strict=True) if kept], directed))
    return graphs
