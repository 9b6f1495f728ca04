import pytest

from data_gen import petersen_graph
from measures import CommunityStructure
from network import Graph
from storage import (
    DiceRow,
    EdgeListError,
    PartitionError,
    RoamRow,
    Trajectory,
    TrajectoryKind,
    parse_edge_list,
    parse_partition,
    read_edge_list_file,
    write_edge_list,
    write_partition,
    write_trajectory_csv,
)

EDGE_LIST = """\
# a small network
alice bob
bob carol

carol alice
bob alice
"""


def test_labels_map_to_dense_ids_in_order_of_appearance():
    doc = parse_edge_list(EDGE_LIST)
    assert doc.labels == ("alice", "bob", "carol")
    assert doc.label_to_id == {"alice": 0, "bob": 1, "carol": 2}
    assert doc.graph == Graph(3, [(0, 1), (1, 2), (0, 2)])
    assert doc.duplicates == 1


def test_directed_pairs_are_kept_apart():
    doc = parse_edge_list("a b\nb a\n", directed=True)
    assert doc.graph.edge_count == 2
    assert doc.duplicates == 0


@pytest.mark.parametrize(
    ("text", "line", "message"),
    [
        ("a b\na b c\n", 2, "expected two labels"),
        ("# header\n\nx x\n", 3, "self-loop"),
        ("lonely\n", 1, "found 1"),
    ],
)
def test_malformed_lines_name_the_line(text, line, message):
    with pytest.raises(EdgeListError, match=message) as info:
        parse_edge_list(text)
    assert info.value.line == line
    assert str(info.value).startswith(f"line {line}: ")


def test_write_edge_list():
    text = write_edge_list(Graph(3, [(2, 0), (1, 2)]))
    assert text == "# undirected graph: 3 nodes, 2 edges\n0 2\n1 2\n"
    assert write_edge_list(Graph(2, [(1, 0)], directed=True), labels=["x", "y"]) == (
        "# directed graph: 2 nodes, 1 edges\ny x\n"
    )


def test_written_edge_list_parses_back_to_an_isomorphic_graph():
    g = petersen_graph()
    doc = parse_edge_list(write_edge_list(g))
    relabelled = [(int(doc.labels[u]), int(doc.labels[v])) for u, v in doc.graph.edges()]
    assert Graph(10, relabelled) == g


def test_isolated_nodes_do_not_survive_an_edge_list():
    doc = parse_edge_list(write_edge_list(Graph(4, [(0, 1)])))
    assert doc.graph.n == 2


def test_read_edge_list_file(tmp_path):
    path = tmp_path / "net.txt"
    path.write_text(EDGE_LIST, encoding="utf-8")
    assert read_edge_list_file(path).graph.edge_count == 3


def test_parse_partition_with_ids_and_labels():
    cs = parse_partition("# communities\n0 2\n1 3\n", 4)
    assert cs == CommunityStructure.from_sets([[0, 2], [1, 3]], 4)
    doc = parse_edge_list(EDGE_LIST)
    cs = parse_partition("carol\nalice bob\n", 3, doc.label_to_id)
    assert cs == CommunityStructure.from_sets([[2], [0, 1]], 3)


@pytest.mark.parametrize(
    ("text", "labels", "message"),
    [
        ("0 1\n1 2\n", None, "line 2: node 1 already appears on line 1"),
        ("0 1\n", None, "1 nodes are not assigned"),
        ("0 one\n2\n", None, "not an integer"),
        ("0 1 7\n2\n", None, "not in a graph of 3 nodes"),
        ("a b\nzed\n", {"a": 0, "b": 1, "c": 2}, "unknown node label 'zed'"),
    ],
)
def test_partition_errors(text, labels, message):
    with pytest.raises(PartitionError, match=message):
        parse_partition(text, 3, labels)


def test_write_partition():
    cs = CommunityStructure.from_sets([[3, 1], [0, 2]], 4)
    assert write_partition(cs) == "0 2\n1 3\n"
    assert write_partition(cs, labels=["a", "b", "c", "d"]) == "a c\nb d\n"
    assert parse_partition(write_partition(cs), 4) == cs


def test_dice_trajectory_csv():
    trajectory = Trajectory(
        kind=TrajectoryKind.DICE,
        rows=[DiceRow(round=0, pct_rounds=0.0, mu=0.0), DiceRow(round=1, pct_rounds=100.0, mu=1 / 3)],
    )
    assert write_trajectory_csv(trajectory) == "round,pct_rounds,mu\n0,0.000000,0.000000\n1,100.000000,0.333333\n"


def test_roam_trajectory_csv_leaves_missing_models_blank():
    trajectory = Trajectory(
        kind=TrajectoryKind.ROAM,
        rows=[RoamRow(0, 1, 1, 1, {"ic": 1.0}), RoamRow(1, 3, 2, 4, {"ic": 0.5})],
    )
    lines = write_trajectory_csv(trajectory).splitlines()
    assert lines[0] == "execution,degree_rank,closeness_rank,betweenness_rank,ic_rel_influence,lt_rel_influence"
    assert lines[1:] == ["0,1,1,1,1.000000,", "1,3,2,4,0.500000,"]


def test_empty_trajectory_writes_only_the_header():
    assert write_trajectory_csv(Trajectory(kind=TrajectoryKind.DICE)) == "round,pct_rounds,mu\n"
