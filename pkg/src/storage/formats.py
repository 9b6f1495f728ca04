import logging
from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from pathlib import Path

import pandas as pd

from measures.community import CommunityStructure
from network import Edge, Graph
from storage.models import Trajectory

logger = logging.getLogger(__name__)

FLOAT_FORMAT = "%.6f"


class EdgeListError(ValueError):
    """Raised on a malformed edge-list line; ``line`` is 1-based."""

    def __init__(self, message: str, line: int | None = None) -> None:
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class PartitionError(EdgeListError):
    """Raised on a malformed or inconsistent partition file."""


@dataclass(frozen=True)
class EdgeListDocument:
    """A parsed edge list: the graph plus the original label of each node id."""

    graph: Graph
    labels: tuple[str, ...]
    duplicates: int = 0

    @property
    def label_to_id(self) -> dict[str, int]:
        return {label: node for node, label in enumerate(self.labels)}


def _content_lines(text: str) -> list[tuple[int, list[str]]]:
    lines = []
    for number, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        lines.append((number, stripped.split()))
    return lines


def parse_edge_list(text: str, directed: bool = False) -> EdgeListDocument:
    """Parse whitespace-separated label pairs into a graph.

    Labels are mapped to dense ids in order of first appearance. Blank lines and ``#``
    comments are skipped; repeated edges (including reversed pairs of an undirected graph)
    are collapsed and counted.

    Args:
    ----
        text (str): The edge-list contents.
        directed (bool): Whether pairs are ordered.

    Returns:
    -------
        EdgeListDocument: The graph, its labels and the number of collapsed duplicates.

    Raises:
    ------
        EdgeListError: On a line without exactly two tokens or on a self-loop.

    """
    ids: dict[str, int] = {}
    edges: list[Edge] = []
    seen: set[Edge] = set()
    duplicates = 0
    for number, tokens in _content_lines(text):
        if len(tokens) != 2:
            msg = f"expected two labels, found {len(tokens)}"
            raise EdgeListError(msg, number)
        a, b = tokens
        if a == b:
            msg = f"self-loop on {a!r}"
            raise EdgeListError(msg, number)
        u = ids.setdefault(a, len(ids))
        v = ids.setdefault(b, len(ids))
        key = (u, v) if directed or u < v else (v, u)
        if key in seen:
            duplicates += 1
            continue
        seen.add(key)
        edges.append((u, v))
    if duplicates:
        logger.warning("Collapsed %d duplicate edges", duplicates)
    graph = Graph(len(ids), edges, directed)
    return EdgeListDocument(graph=graph, labels=tuple(ids), duplicates=duplicates)


def write_edge_list(g: Graph, labels: Sequence[str] | None = None) -> str:
    """Serialize ``g`` as one edge per line, preceded by a comment header."""
    kind = "directed" if g.directed else "undirected"
    lines = [f"# {kind} graph: {g.n} nodes, {g.edge_count} edges"]
    for u, v in g.edges():
        if labels is None:
            lines.append(f"{u} {v}")
        else:
            lines.append(f"{labels[u]} {labels[v]}")
    return "\n".join(lines) + "\n"


def parse_partition(text: str, n: int, label_to_id: Mapping[str, int] | None = None) -> CommunityStructure:
    """Parse one community per line into a partition of ``n`` nodes.

    Without ``label_to_id`` the tokens must be integer node ids.

    Raises
    ------
        PartitionError: On an unknown label, a node listed twice or a node listed nowhere.

    """
    communities: list[list[int]] = []
    owner: dict[int, int] = {}
    for number, tokens in _content_lines(text):
        community = []
        for token in tokens:
            if label_to_id is not None:
                if token not in label_to_id:
                    msg = f"unknown node label {token!r}"
                    raise PartitionError(msg, number)
                node = label_to_id[token]
            else:
                try:
                    node = int(token)
                except ValueError:
                    msg = f"node id {token!r} is not an integer"
                    raise PartitionError(msg, number) from None
                if not 0 <= node < n:
                    msg = f"node {node} is not in a graph of {n} nodes"
                    raise PartitionError(msg, number)
            if node in owner:
                msg = f"node {token} already appears on line {owner[node]}"
                raise PartitionError(msg, number)
            owner[node] = number
            community.append(node)
        communities.append(community)
    missing = sorted(set(range(n)) - owner.keys())
    if missing:
        msg = f"{len(missing)} nodes are not assigned to a community, starting with node {missing[0]}"
        raise PartitionError(msg)
    return CommunityStructure.from_sets(communities, n)


def write_partition(cs: CommunityStructure, labels: Sequence[str] | None = None) -> str:
    lines = []
    for community in cs:
        nodes = sorted(community)
        lines.append(" ".join(labels[v] if labels is not None else str(v) for v in nodes))
    return "\n".join(lines) + "\n"


def frame_to_csv(frame: pd.DataFrame) -> str:
    """Render a frame with one header line, 6 fractional digits and ``\\n`` line endings."""
    return frame.to_csv(index=False, float_format=FLOAT_FORMAT, lineterminator="\n")


def trajectory_frame(trajectory: Trajectory) -> pd.DataFrame:
    return pd.DataFrame(trajectory.records(), columns=trajectory.columns)


def write_trajectory_csv(trajectory: Trajectory) -> str:
    """Serialize a ROAM or DICE trajectory, rows in step order."""
    return frame_to_csv(trajectory_frame(trajectory))


def read_edge_list_file(path: Path, directed: bool = False) -> EdgeListDocument:
    return parse_edge_list(Path(path).read_text(encoding="utf-8"), directed)
