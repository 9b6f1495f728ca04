"""Graph constructions that turn Hamiltonian Cycle and Set Cover instances into evasion problems.

Each gadget records the budget, forbidden moves and target value under which the evasion
problem is solvable exactly when the source instance is, so small instances can be
cross-checked against the brute-force solvers here.
"""

import itertools
import logging
import math
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field

import numpy as np

from measures.centrality import CentralityKind
from measures.influence import InfluenceModel
from network import Edge, Graph
from oracles.exact_solvers import DisguiseProblem, RecoveryProblem, SearchSpaceError

logger = logging.getLogger(__name__)

MAX_SETS = 15
MAX_HAMILTONIAN_NODES = 10


class GadgetError(ValueError):
    """Raised on an invalid Set Cover instance or gadget input."""


@dataclass(frozen=True)
class SetCoverInstance:
    """Universe ``{0..l-1}``, a collection of subsets and a target cover size ``k``."""

    l: int  # noqa: E741
    sets: tuple[frozenset[int], ...]
    k: int

    def __post_init__(self) -> None:
        if self.l < 1:
            msg = f"the universe needs at least one element, got l={self.l}"
            raise GadgetError(msg)
        for s in self.sets:
            if not s or not s <= set(range(self.l)):
                msg = f"set {sorted(s)} must be a non-empty subset of the universe"
                raise GadgetError(msg)
        if set().union(*self.sets) != set(range(self.l)):
            msg = "the sets do not cover the universe"
            raise GadgetError(msg)
        if self.k < 0:
            msg = f"cover size must be non-negative, got k={self.k}"
            raise GadgetError(msg)

    @classmethod
    def of(cls, l: int, sets: Iterable[Iterable[int]], k: int) -> "SetCoverInstance":  # noqa: E741
        return cls(l=l, sets=tuple(frozenset(s) for s in sets), k=k)

    @property
    def m(self) -> int:
        return len(self.sets)

    def with_k(self, k: int) -> "SetCoverInstance":
        return SetCoverInstance(l=self.l, sets=self.sets, k=k)


def random_set_cover(l: int, m: int, rng: np.random.Generator) -> SetCoverInstance:  # noqa: E741
    """Draw ``m`` random non-empty subsets of ``{0..l-1}``, patching the last ones so every element is covered."""
    sets = []
    for _ in range(m):
        mask = rng.random(l) < 0.5
        if not mask.any():
            mask[rng.integers(l)] = True
        sets.append(set(np.flatnonzero(mask).tolist()))
    uncovered = set(range(l)) - set().union(*sets)
    for element in sorted(uncovered):
        sets[int(rng.integers(m))].add(element)
    instance = SetCoverInstance.of(l, sets, k=0)
    return instance.with_k(brute_force_set_cover(instance))


@dataclass(frozen=True)
class GadgetInstance:
    """An evasion instance built from a hardness gadget.

    ``target_value`` is the centrality that is reachable iff the source instance is a yes
    instance; ``target_total`` and ``target_per_node`` are the influence targets to recover.
    ``nodes`` names the special nodes of the construction.
    """

    name: str
    graph: Graph
    v_dagger: int
    budget: int
    kind: CentralityKind | None = None
    model: InfluenceModel | None = None
    forbidden_removals: frozenset[Edge] = frozenset()
    forbidden_additions: frozenset[Edge] = frozenset()
    target_value: float | None = None
    target_total: float | None = None
    target_per_node: Mapping[int, float] | None = None
    arc_probabilities: Mapping[Edge, float] | None = field(default=None, compare=False)
    thresholds: tuple[int, ...] | None = None
    nodes: Mapping[str, tuple[int, ...]] = field(default_factory=dict, compare=False)

    def disguise_problem(self, budget: int | None = None) -> DisguiseProblem:
        return DisguiseProblem(
            graph=self.graph,
            v_dagger=self.v_dagger,
            budget=self.budget if budget is None else budget,
            kind=self.kind,
            forbidden_removals=self.forbidden_removals,
            forbidden_additions=self.forbidden_additions,
        )

    def recovery_problem(self, individual: bool = False) -> RecoveryProblem:
        return RecoveryProblem(
            graph=self.graph,
            v_dagger=self.v_dagger,
            model=self.model,
            p=1.0,
            forbidden_additions=self.forbidden_additions,
            target_per_node=self.target_per_node if individual else None,
            target_total=None if individual else self.target_total,
            arc_probabilities=self.arc_probabilities,
            thresholds=self.thresholds,
        )


def _all_but(g: Graph, allowed: Iterable[Edge]) -> frozenset[Edge]:
    keep = set(allowed)
    if not g.directed:
        keep = {(min(u, v), max(u, v)) for u, v in keep}
    return frozenset(e for e in g.non_edges() if e not in keep)


def closeness_gadget(g_prime: Graph, w: int) -> GadgetInstance:
    """Attach the source node to ``w`` so that a path-shaped optimum exists iff ``g_prime`` is Hamiltonian.

    Undirected: the source ``n'`` hangs off ``w``; ``v1 = n'+1`` joins every neighbor of ``w`` and
    the pendant ``v2 = n'+2``. Directed: ``v1 = n'+1`` receives an arc from every predecessor of
    ``w`` and points at the source. The budget ``|E'| - |V'| + |pred(w)|`` is exactly the number
    of removals that leaves a Hamiltonian path through the source, so additions are forbidden.

    Raises
    ------
        GadgetError: If ``g_prime`` has fewer than 3 nodes or ``w`` is not one of them.

    """
    n_prime = g_prime.n
    if n_prime < 3 or not 0 <= w < n_prime:
        msg = f"closeness gadget needs n' >= 3 and a node w of G', got n'={n_prime}, w={w}"
        raise GadgetError(msg)
    source, v1 = n_prime, n_prime + 1
    edges = list(g_prime.edges())
    if g_prime.directed:
        n = n_prime + 2
        edges += [(source, w), (v1, source)]
        edges += [(v, v1) for v in g_prime.predecessors(w)]
        target = harmonic_target(n)
        special = {"v1": (v1,)}
    else:
        v2 = n_prime + 2
        n = n_prime + 3
        edges += [(source, w), (v1, v2)]
        edges += [(v, v1) for v in g_prime.neighbors(w)]
        target = 2.0 / n
        special = {"v1": (v1,), "v2": (v2,)}
    g = Graph(n, edges, g_prime.directed)
    budget = g_prime.edge_count - n_prime + len(g_prime.predecessors(w))
    return GadgetInstance(
        name="closeness",
        graph=g,
        v_dagger=source,
        budget=budget,
        kind=CentralityKind.CLOSENESS,
        forbidden_additions=frozenset(g.non_edges()),
        target_value=target,
        nodes={"w": (w,), **special},
    )


def betweenness_gadget(sc: SetCoverInstance, directed: bool = False) -> GadgetInstance:
    """Build the Set Cover gadget for betweenness.

    Set nodes ``S_j`` are ``0..m-1`` and element nodes ``u_i`` follow; the source, ``v0`` and
    ``v1`` come last. The source keeps betweenness ``q`` (one pair) iff linking at most ``k``
    set nodes to ``v0`` covers every element. No edge may be removed and only ``(S_j, v0)``
    may be added.
    """
    m, l = sc.m, sc.l
    set_nodes = tuple(range(m))
    element_nodes = tuple(m + i for i in range(l))
    source, v0, v1 = m + l, m + l + 1, m + l + 2
    n = m + l + 3
    edges: list[Edge] = [(source, v0), (v1, source)]
    for j, members in enumerate(sc.sets):
        edges += [(set_nodes[j], element_nodes[i]) for i in sorted(members)]
    edges += [(u, v1) for u in element_nodes]
    if directed:
        for j, members in enumerate(sc.sets):
            edges += [(element_nodes[i], set_nodes[j]) for i in sorted(members)]
        edges += [(v1, u) for u in element_nodes]
        edges.append((v0, v1))
    g = Graph(n, edges, directed)
    scale = (n - 1) * (n - 2)
    return GadgetInstance(
        name="betweenness",
        graph=g,
        v_dagger=source,
        budget=sc.k,
        kind=CentralityKind.BETWEENNESS,
        forbidden_removals=frozenset(g.edges()),
        forbidden_additions=_all_but(g, [(s, v0) for s in set_nodes]),
        target_value=(1.0 if directed else 2.0) / scale,
        nodes={"sets": set_nodes, "elements": element_nodes, "v0": (v0,), "v1": (v1,)},
    )


def ic_setcover_gadget(sc: SetCoverInstance, directed: bool = False) -> GadgetInstance:
    """Build the Set Cover gadget for independent cascade recovery.

    Set nodes link to their elements; in the directed version elements also point back at the
    source. Only ``(source, S_j)`` may be added. Every arc the construction relies on fires with
    probability 1; undirected edges fire only away from the source, so each added set activates
    itself and its elements. Individual targets ask for every element; the global target is
    ``k + l``.
    """
    m, l = sc.m, sc.l
    set_nodes = tuple(range(m))
    element_nodes = tuple(m + i for i in range(l))
    source = m + l
    edges: list[Edge] = []
    for j, members in enumerate(sc.sets):
        edges += [(set_nodes[j], element_nodes[i]) for i in sorted(members)]
    if directed:
        edges += [(u, source) for u in element_nodes]
        probabilities = None
    else:
        probabilities = {(source, s): 1.0 for s in set_nodes}
        for j, members in enumerate(sc.sets):
            probabilities.update({(set_nodes[j], element_nodes[i]): 1.0 for i in members})
    g = Graph(m + l + 1, edges, directed)
    return GadgetInstance(
        name="ic",
        graph=g,
        v_dagger=source,
        budget=sc.k,
        model=InfluenceModel.IC,
        forbidden_additions=_all_but(g, [(source, s) for s in set_nodes]),
        target_total=float(sc.k + l),
        target_per_node={u: 1.0 for u in element_nodes},
        arc_probabilities=probabilities,
        nodes={"sets": set_nodes, "elements": element_nodes},
    )


def lt_setcover_gadget(sc: SetCoverInstance, directed: bool = False) -> GadgetInstance:
    """Build the Set Cover gadget for linear threshold recovery.

    Undirected: each set has a node ``S_j``, a gate ``T_j`` with threshold ``l`` and ``l`` relay
    nodes ``s_{j,i}`` between them; ``T_j`` links to the elements of the set. Adding
    ``(source, S_j)`` activates ``S_j``, its relays, ``T_j`` and then its elements, ``l + 2``
    nodes plus the newly covered elements. Every other threshold is 1 and the global target is
    ``k(l + 2) + l``. The directed version reuses the directed IC graph with all thresholds 1
    and target ``k + l``.
    """
    if directed:
        base = ic_setcover_gadget(sc, directed=True)
        return GadgetInstance(
            name="lt",
            graph=base.graph,
            v_dagger=base.v_dagger,
            budget=sc.k,
            model=InfluenceModel.LT,
            forbidden_additions=base.forbidden_additions,
            target_total=float(sc.k + sc.l),
            target_per_node=base.target_per_node,
            thresholds=(1,) * base.graph.n,
            nodes=base.nodes,
        )

    m, l = sc.m, sc.l
    set_nodes = tuple(range(m))
    gate_nodes = tuple(m + j for j in range(m))
    element_nodes = tuple(2 * m + i for i in range(l))
    relay_start = 2 * m + l
    relays = tuple(relay_start + j * l + i for j in range(m) for i in range(l))
    source = relay_start + m * l
    edges: list[Edge] = []
    for j, members in enumerate(sc.sets):
        edges += [(gate_nodes[j], element_nodes[i]) for i in sorted(members)]
        for i in range(l):
            relay = relay_start + j * l + i
            edges += [(set_nodes[j], relay), (relay, gate_nodes[j])]
    g = Graph(source + 1, edges)
    thresholds = [1] * g.n
    for gate in gate_nodes:
        thresholds[gate] = l
    return GadgetInstance(
        name="lt",
        graph=g,
        v_dagger=source,
        budget=sc.k,
        model=InfluenceModel.LT,
        forbidden_additions=_all_but(g, [(source, s) for s in set_nodes]),
        target_total=float(sc.k * (l + 2) + l),
        target_per_node={u: 1.0 for u in element_nodes},
        thresholds=tuple(thresholds),
        nodes={"sets": set_nodes, "gates": gate_nodes, "elements": element_nodes, "relays": relays},
    )


def brute_force_set_cover(sc: SetCoverInstance) -> int:
    """Return the size of a smallest cover.

    Raises
    ------
        SearchSpaceError: If there are more than 15 sets.

    """
    if sc.m > MAX_SETS:
        msg = f"brute-force set cover supports at most {MAX_SETS} sets, got {sc.m}"
        raise SearchSpaceError(msg)
    universe = set(range(sc.l))
    for size in range(1, sc.m + 1):
        for combo in itertools.combinations(sc.sets, size):
            if set().union(*combo) == universe:
                return size
    msg = "the sets do not cover the universe"
    raise GadgetError(msg)


def brute_force_hamiltonian(g: Graph) -> bool:
    """Return whether ``g`` has a cycle through every node, respecting directions.

    Raises
    ------
        SearchSpaceError: If the graph has more than 10 nodes.

    """
    if g.n > MAX_HAMILTONIAN_NODES:
        msg = f"brute-force Hamiltonian search supports at most {MAX_HAMILTONIAN_NODES} nodes, got {g.n}"
        raise SearchSpaceError(msg)
    if g.n < 2 or (g.n == 2 and not g.directed):
        return False
    for rest in itertools.permutations(range(1, g.n)):
        tour = (0, *rest, 0)
        if all(g.has_edge(a, b) for a, b in itertools.pairwise(tour)):
            return True
    return False


def closed_form_counts(name: str, sc: SetCoverInstance | None = None, g_prime: Graph | None = None) -> int:
    """Expected node count of a gadget built from ``sc`` or ``g_prime``."""
    match name:
        case "closeness":
            return g_prime.n + (2 if g_prime.directed else 3)
        case "betweenness":
            return sc.l + sc.m + 3
        case "ic":
            return sc.l + sc.m + 1
        case "lt":
            return sc.m * (sc.l + 2) + sc.l + 1
    msg = f"unknown gadget {name!r}"
    raise GadgetError(msg)


def harmonic_target(n: int) -> float:
    """Closeness of a node on a directed ``n``-cycle: ``(1 + 1/2 + ... + 1/(n-1)) / (n-1)``."""
    return math.fsum(1.0 / i for i in range(1, n)) / (n - 1)
