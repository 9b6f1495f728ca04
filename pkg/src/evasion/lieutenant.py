import logging
import math
from collections.abc import Iterable, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import Enum
from functools import partial

from measures.centrality import CentralityKind, centralities
from measures.influence import InfluenceConfig, estimate_influence
from network import Edge, Graph

logger = logging.getLogger(__name__)

SOURCE = 0


class LieutenantError(ValueError):
    """Raised on a lieutenant network that cannot be built."""


class NodeRole(str, Enum):
    SOURCE = "source"
    LIEUTENANT_L = "lieutenant_l"
    LIEUTENANT_L_PRIME = "lieutenant_l_prime"
    MEMBER = "member"


@dataclass(frozen=True)
class LieutenantSpec:
    """``n`` nodes: the source, two groups of ``k`` lieutenants and ``n - 2k - 1`` members.

    Every member is linked to ``c`` lieutenants of each group.
    """

    n: int
    k: int
    c: int

    @property
    def members(self) -> int:
        return self.n - 2 * self.k - 1

    def problems(self) -> list[str]:
        found = []
        if self.k < 1:
            found.append(f"k must be at least 1, got {self.k}")
        if not 1 <= self.c <= max(self.k, 1):
            found.append(f"c must satisfy 1 <= c <= k, got c={self.c}, k={self.k}")
        if self.members < 1:
            found.append(f"n must be at least 2k + 2, got n={self.n}, k={self.k}")
        return found

    def validate(self) -> None:
        issues = self.problems()
        if issues:
            raise LieutenantError("; ".join(issues))


def build_lieutenant(spec: LieutenantSpec) -> tuple[Graph, list[NodeRole]]:
    """Build the lieutenant network around the source node 0.

    Lieutenants ``L`` are nodes ``1..k`` and ``L'`` are ``k+1..2k``; members follow. The source
    links to every lieutenant, ``L`` and ``L'`` form a complete bipartite graph, and member
    ``j`` links to lieutenants ``(c*j + i) mod k`` of each group for ``i < c``, which keeps the
    member counts of the lieutenants in a group within one of each other.

    Raises
    ------
        LieutenantError: Unless ``1 <= c <= k`` and ``n >= 2k + 2``.

    """
    spec.validate()
    group_l = [1 + i for i in range(spec.k)]
    group_l_prime = [1 + spec.k + i for i in range(spec.k)]
    first_member = 1 + 2 * spec.k

    edges: list[Edge] = [(SOURCE, lieutenant) for lieutenant in group_l + group_l_prime]
    edges.extend((a, b) for a in group_l for b in group_l_prime)
    for j in range(spec.members):
        member = first_member + j
        for i in range(spec.c):
            slot = (spec.c * j + i) % spec.k
            edges.append((group_l[slot], member))
            edges.append((group_l_prime[slot], member))

    roles = [NodeRole.SOURCE]
    roles += [NodeRole.LIEUTENANT_L] * spec.k
    roles += [NodeRole.LIEUTENANT_L_PRIME] * spec.k
    roles += [NodeRole.MEMBER] * spec.members
    return Graph(spec.n, edges), roles


def check_dominance_precondition(spec: LieutenantSpec) -> tuple[int, bool]:
    """Return ``f = floor(c * members / k)`` and whether ``f > k - 1`` and ``f^2 > 4ck`` both hold."""
    f = spec.c * spec.members // spec.k
    return f, f > spec.k - 1 and f * f > 4 * spec.c * spec.k


@dataclass
class SweepCell:
    """Gaps are the smallest lieutenant-minus-source difference of each centrality."""

    k: int
    c: int
    f: int | None
    precondition_holds: bool
    feasible: bool
    degree_bound: float = math.nan
    gap_degree: float = math.nan
    gap_closeness: float = math.nan
    gap_betweenness: float = math.nan
    ic_influence: float = math.nan
    lt_influence: float = math.nan

    def to_record(self) -> dict[str, float | int | bool | None]:
        return {
            "k": self.k,
            "c": self.c,
            "f": self.f,
            "precondition_holds": self.precondition_holds,
            "feasible": self.feasible,
            "degree_bound": self.degree_bound,
            "gap_degree": self.gap_degree,
            "gap_closeness": self.gap_closeness,
            "gap_betweenness": self.gap_betweenness,
            "ic_influence": self.ic_influence,
            "lt_influence": self.lt_influence,
        }


def centrality_gaps(g: Graph, roles: Sequence[NodeRole]) -> dict[CentralityKind, float]:
    lieutenants = [v for v, role in enumerate(roles) if role in (NodeRole.LIEUTENANT_L, NodeRole.LIEUTENANT_L_PRIME)]
    gaps = {}
    for kind in CentralityKind:
        values = centralities(g, kind)
        gaps[kind] = min(values[v] for v in lieutenants) - values[SOURCE]
    return gaps


def lieutenant_cell(n: int, k: int, c: int, influence_cfgs: Sequence[InfluenceConfig] = ()) -> SweepCell:
    """Measure one ``(k, c)`` cell; infeasible cells come back flagged instead of raising."""
    spec = LieutenantSpec(n=n, k=k, c=c)
    issues = spec.problems()
    if issues:
        logger.warning("Lieutenant cell k=%d c=%d is infeasible: %s", k, c, "; ".join(issues))
        return SweepCell(k=k, c=c, f=None, precondition_holds=False, feasible=False)

    f, holds = check_dominance_precondition(spec)
    g, roles = build_lieutenant(spec)
    gaps = centrality_gaps(g, roles)
    cell = SweepCell(
        k=k,
        c=c,
        f=f,
        precondition_holds=holds,
        feasible=True,
        degree_bound=(f - k + 1) / (n - 1),
        gap_degree=gaps[CentralityKind.DEGREE],
        gap_closeness=gaps[CentralityKind.CLOSENESS],
        gap_betweenness=gaps[CentralityKind.BETWEENNESS],
    )
    for icfg in influence_cfgs:
        setattr(cell, f"{icfg.model.value}_influence", estimate_influence(g, SOURCE, icfg).total)
    return cell


def lieutenant_sweep(
    n: int,
    k_range: Iterable[int],
    c_range: Iterable[int],
    influence_cfgs: Sequence[InfluenceConfig] = (),
    workers: int = 1,
) -> list[SweepCell]:
    """Measure every ``(k, c)`` cell, ordered by ``k`` then ``c``."""
    pairs = [(k, c) for k in k_range for c in c_range]
    measure = partial(_measure_pair, n, tuple(influence_cfgs))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            return list(executor.map(measure, pairs))
    return [measure(pair) for pair in pairs]


def _measure_pair(n: int, influence_cfgs: tuple[InfluenceConfig, ...], pair: tuple[int, int]) -> SweepCell:
    k, c = pair
    return lieutenant_cell(n, k, c, influence_cfgs)
