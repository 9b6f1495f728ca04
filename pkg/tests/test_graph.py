import pytest

from data_gen import cycle_graph, path_graph
from network import UNREACHABLE, Graph, GraphError, RewiringPlan, bfs_distances, brandes_pass, components, is_connected


def test_add_edge_undirected_is_symmetric():
    g = Graph(2).add_edge(0, 1)
    assert g.neighbors(0) == (1,)
    assert g.neighbors(1) == (0,)
    assert g.has_edge(1, 0)


def test_add_edge_directed_keeps_orientation():
    g = Graph(2, directed=True).add_edge(0, 1)
    assert g.successors(0) == (1,)
    assert g.predecessors(1) == (0,)
    assert g.successors(1) == ()
    assert not g.has_edge(1, 0)


@pytest.mark.parametrize("edge", [(0, 0), (0, 5)])
def test_add_edge_rejects_self_loops_and_unknown_nodes(edge):
    with pytest.raises(GraphError):
        Graph(3).add_edge(*edge)


def test_add_edge_rejects_duplicates_in_either_orientation():
    g = path_graph(2)
    with pytest.raises(GraphError, match="already exists"):
        g.add_edge(1, 0)


def test_graph_rejects_parallel_edges_at_construction():
    with pytest.raises(GraphError):
        Graph(3, [(0, 1), (1, 0)])


def test_remove_edge():
    assert path_graph(2).remove_edge(0, 1).edge_count == 0
    g = cycle_graph(3, directed=True).remove_edge(0, 1)
    assert g.edges() == [(1, 2), (2, 0)]
    with pytest.raises(GraphError, match="not in the graph"):
        g.remove_edge(0, 1)


def test_mutation_returns_new_graph():
    g = path_graph(3)
    g.add_edge(0, 2)
    assert g.edge_count == 2


def test_edge_count_matches_adjacency():
    g = Graph(4, [(0, 1), (1, 2), (2, 0), (2, 3)], directed=True)
    assert g.edge_count == sum(len(g.successors(v)) for v in g.nodes)
    u = g.symmetrized()
    assert 2 * u.edge_count == sum(len(u.neighbors(v)) for v in u.nodes)


def test_directed_degree_counts_union_of_neighbors():
    g = Graph(3, [(0, 1), (1, 0), (2, 0)], directed=True)
    assert g.degree(0) == 2


def test_rewiring_plan_validation():
    with pytest.raises(GraphError):
        RewiringPlan(additions=((0, 1),), removals=((0, 1),))
    with pytest.raises(GraphError, match="budget"):
        RewiringPlan(additions=((0, 1), (1, 2)), budget=1)
    plan = RewiringPlan(additions=((0, 2),), removals=((0, 1),), budget=2)
    assert plan.cost == 2
    assert not plan.is_empty()


def test_apply_adds_then_removes():
    g = path_graph(3).apply(RewiringPlan(additions=((0, 2),), removals=((0, 1),)))
    assert g.edges() == [(0, 2), (1, 2)]
    with pytest.raises(GraphError):
        path_graph(3).apply(RewiringPlan(removals=((0, 2),)))
    with pytest.raises(GraphError):
        path_graph(3).apply(RewiringPlan(additions=((1, 0),)))


def test_non_edges():
    assert path_graph(3).non_edges() == [(0, 2)]
    assert Graph(2, [(0, 1)], directed=True).non_edges() == [(1, 0)]


def test_bfs_distances():
    assert bfs_distances(path_graph(3), 0) == [0, 1, 2]
    assert bfs_distances(Graph(3, [(0, 1)], directed=True), 0) == [0, 1, UNREACHABLE]
    assert max(bfs_distances(cycle_graph(5), 0)) == 2


def test_bfs_distances_follow_directions():
    assert bfs_distances(path_graph(3, directed=True), 2) == [UNREACHABLE, UNREACHABLE, 0]


def test_is_connected():
    assert is_connected(path_graph(4))
    assert not is_connected(path_graph(3, directed=True))
    assert is_connected(cycle_graph(4, directed=True))
    assert not is_connected(Graph(3, [(0, 1)]))
    assert is_connected(Graph(1))


def test_components_are_weak_and_ordered():
    g = Graph(5, [(3, 4), (1, 0)], directed=True)
    assert components(g) == [frozenset({0, 1}), frozenset({2}), frozenset({3, 4})]


def test_brandes_pass_counts_shortest_paths():
    result = brandes_pass(cycle_graph(4), 0)
    assert result.sigma[2] == 2
    assert result.dist == [0, 1, 2, 1]
    assert result.order[0] == 0


def test_brandes_pass_dependencies_on_a_path():
    # From an endpoint every interior node lies on the paths to everything beyond it.
    result = brandes_pass(path_graph(4), 0)
    assert result.delta[1] == pytest.approx(2.0)
    assert result.delta[2] == pytest.approx(1.0)
    assert result.delta[3] == pytest.approx(0.0)
