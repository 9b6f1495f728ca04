import networkx as nx
import numpy as np
import pytest

from conftest import to_networkx
from data_gen import complete_graph, cycle_graph, path_graph, petersen_graph, star_graph
from measures import (
    CentralityKind,
    betweenness_centrality,
    closeness_centrality,
    degree_centrality,
    rank_values,
    ranking,
    select_source_node,
    source_ranks,
)
from network import Graph, GraphError, is_connected
from oracles import naive_betweenness, naive_closeness, naive_degree


def test_degree_centrality_values():
    assert degree_centrality(star_graph(4), 0) == 1.0
    assert degree_centrality(path_graph(5), 0) == 0.25
    assert degree_centrality(Graph(3, [(0, 1), (1, 0)], directed=True), 0) == 0.25


def test_degree_centrality_needs_two_nodes():
    with pytest.raises(GraphError):
        degree_centrality(Graph(1), 0)


def test_closeness_centrality_values():
    assert closeness_centrality(path_graph(5), 0) == pytest.approx(0.4)
    assert closeness_centrality(cycle_graph(4, directed=True), 2) == pytest.approx(11 / 18)
    assert closeness_centrality(star_graph(5), 0) == 1.0


@pytest.mark.parametrize("n", range(3, 13))
def test_path_endpoint_closeness_is_two_over_n(n):
    assert closeness_centrality(path_graph(n), 0) == pytest.approx(2 / n, abs=1e-12)


def test_disconnected_undirected_closeness_uses_harmonic_form():
    g = Graph(4, [(0, 1), (2, 3)])
    assert closeness_centrality(g, 0) == pytest.approx(1 / 3)


def test_betweenness_values():
    star = betweenness_centrality(star_graph(4))
    assert star[0] == pytest.approx(1.0)
    assert star[1:] == [0.0] * 4
    assert betweenness_centrality(path_graph(3))[1] == pytest.approx(1.0)


def test_betweenness_needs_three_nodes():
    with pytest.raises(GraphError):
        betweenness_centrality(path_graph(2))


def test_measures_match_brute_force(random_graphs):
    for g in random_graphs:
        assert np.allclose([degree_centrality(g, v) for v in g.nodes], naive_degree(g), atol=1e-12, rtol=0)
        assert np.allclose([closeness_centrality(g, v) for v in g.nodes], naive_closeness(g), atol=1e-12, rtol=0)
        assert np.allclose(betweenness_centrality(g), naive_betweenness(g), atol=1e-12, rtol=0)


def test_measures_match_networkx(random_graphs, scale_free):
    for g in [*random_graphs, scale_free, petersen_graph()]:
        other = to_networkx(g)
        expected = nx.betweenness_centrality(other, normalized=True)
        assert np.allclose(betweenness_centrality(g), [expected[v] for v in g.nodes], atol=1e-12, rtol=0)
        if g.directed:
            continue
        degree = nx.degree_centrality(other)
        assert np.allclose([degree_centrality(g, v) for v in g.nodes], [degree[v] for v in g.nodes])
        if is_connected(g):
            closeness = nx.closeness_centrality(other)
            assert np.allclose([closeness_centrality(g, v) for v in g.nodes], [closeness[v] for v in g.nodes])


def test_values_lie_in_unit_interval(random_graphs):
    for g in random_graphs:
        for kind in CentralityKind:
            assert all(0.0 <= value <= 1.0 + 1e-12 for value in (entry.value for entry in ranking(g, kind).entries))


def test_competition_ranking():
    result = rank_values([3.0, 5.0, 5.0, 1.0], CentralityKind.DEGREE)
    assert result.as_dict() == {1: 1, 2: 1, 0: 3, 3: 4}
    assert [entry.node for entry in result.entries] == [1, 2, 0, 3]


def test_ranking_on_small_graphs():
    star = ranking(star_graph(4), CentralityKind.DEGREE)
    assert star.rank_of(0) == 1
    assert {star.rank_of(v) for v in range(1, 5)} == {2}
    assert set(ranking(petersen_graph(), CentralityKind.DEGREE).as_dict().values()) == {1}
    p4 = ranking(path_graph(4), CentralityKind.CLOSENESS)
    assert p4.rank_of(1) == p4.rank_of(2) == 1
    assert p4.rank_of(0) == 3


def test_ranking_is_permutation_equivariant():
    g = Graph(6, [(0, 1), (0, 2), (1, 2), (2, 3), (3, 4), (4, 5)])
    perm = [3, 5, 0, 1, 4, 2]
    relabelled = Graph(6, [(perm[u], perm[v]) for u, v in g.edges()])
    for kind in CentralityKind:
        before = ranking(g, kind).as_dict()
        after = ranking(relabelled, kind).as_dict()
        assert all(after[perm[v]] == before[v] for v in g.nodes)


def test_source_ranks_of_star_center():
    assert source_ranks(star_graph(5), 0) == dict.fromkeys(CentralityKind, 1)


def test_select_source_node():
    assert select_source_node(star_graph(6), np.random.default_rng(0)) == 0
    hub = Graph(7, [(0, v) for v in range(1, 7)] + [(1, 2), (3, 4)])
    assert select_source_node(hub, np.random.default_rng(0)) == 0


def test_select_source_node_breaks_ties_at_random():
    g = cycle_graph(6)
    picks = {select_source_node(g, np.random.default_rng(seed)) for seed in range(60)}
    assert len(picks) > 1
    assert select_source_node(complete_graph(4), np.random.default_rng(3)) == select_source_node(
        complete_graph(4), np.random.default_rng(3)
    )
