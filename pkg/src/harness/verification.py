"""End-to-end oracle suites behind the ``verify`` command.

Each suite cross-checks a fast code path against a definitional or exhaustive oracle and
reports how many checks ran and which failed.
"""

import itertools
import logging
from collections.abc import Callable
from dataclasses import dataclass, field

import numpy as np

from data_gen import complete_graph, cycle_graph, erdos_renyi, path_graph, star_graph, two_cliques_bridge
from evasion.lieutenant import LieutenantSpec, build_lieutenant, centrality_gaps, check_dominance_precondition
from evasion.roam import RoamConfig, RoamError, roam_step
from harness.seeding import derive_rng
from measures.centrality import betweenness_centrality, closeness_centrality, degree_centrality
from measures.community import CommunityStructure
from measures.concealment import ConcealmentParams, HiddenGroup, mu, mu_double_prime, mu_prime
from measures.influence import (
    InfluenceConfig,
    InfluenceModel,
    estimate_influence,
    exact_influence_ic,
    exact_influence_lt,
)
from network import Graph, is_connected
from oracles import (
    SetCoverInstance,
    betweenness_gadget,
    brute_force_hamiltonian,
    brute_force_set_cover,
    closeness_gadget,
    ic_setcover_gadget,
    lt_setcover_gadget,
    minimal_recovery,
    naive_betweenness,
    naive_closeness,
    naive_degree,
    optimal_disguise,
    random_set_cover,
)

logger = logging.getLogger(__name__)

EXACT = 1e-12
MC_TOLERANCE = 0.02
MAX_REPORTED_FAILURES = 5


@dataclass
class SuiteResult:
    name: str
    checks: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def check(self, condition: bool, description: str) -> None:
        self.checks += 1
        if not condition:
            self.failures.append(description)

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        line = f"{status} {self.name}: {self.checks - len(self.failures)}/{self.checks} checks"
        details = [f"    {failure}" for failure in self.failures[:MAX_REPORTED_FAILURES]]
        return "\n".join([line, *details])


def random_graph(rng: np.random.Generator, n: int, directed: bool) -> Graph:
    """Random simple graph where every ordered (directed) or unordered pair appears with probability 0.4."""
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v and (directed or u < v)]
    keep = rng.random(len(pairs)) < 0.4
    return Graph(n, [pair for pair, kept in zip(pairs, keep, strict=True) if kept], directed)


def connected_graphs(n: int, directed: bool = False) -> list[Graph]:
    """Every connected graph on ``n`` nodes up to isomorphism (strongly connected when directed)."""
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v and (directed or u < v)]
    permutations = list(itertools.permutations(range(n)))
    seen: set[frozenset] = set()
    found = []
    for mask in range(1 << len(pairs)):
        edges = [pair for bit, pair in enumerate(pairs) if mask >> bit & 1]
        if len(edges) < n - 1:
            continue
        g = Graph(n, edges, directed)
        if not is_connected(g):
            continue
        forms = []
        for perm in permutations:
            mapped = ((perm[u], perm[v]) for u, v in edges)
            forms.append(frozenset(mapped if directed else ((min(a, b), max(a, b)) for a, b in mapped)))
        if seen.isdisjoint(forms):
            seen.add(forms[0])
            found.append(g)
    return found


def centrality_suite(quick: bool, seed: int) -> SuiteResult:
    result = SuiteResult("centrality vs definitional brute force")
    rng = derive_rng(seed, 1)
    for index in range(40 if quick else 200):
        g = random_graph(rng, int(rng.integers(4, 9)), directed=bool(index % 2))
        expected = {
            "degree": naive_degree(g),
            "closeness": naive_closeness(g),
            "betweenness": naive_betweenness(g),
        }
        actual = {
            "degree": [degree_centrality(g, v) for v in g.nodes],
            "closeness": [closeness_centrality(g, v) for v in g.nodes],
            "betweenness": betweenness_centrality(g),
        }
        for kind, values in expected.items():
            gap = max(abs(a - b) for a, b in zip(actual[kind], values, strict=True))
            result.check(gap <= EXACT, f"{kind} differs by {gap:.3g} on {g!r} #{index}")
    return result


def closed_form_suite(quick: bool, seed: int) -> SuiteResult:  # noqa: ARG001
    result = SuiteResult("closed-form closeness minima")
    for n in range(3, 13):
        value = closeness_centrality(path_graph(n), 0)
        result.check(abs(value - 2 / n) <= EXACT, f"path endpoint closeness {value} != 2/{n}")
        expected = sum(1 / i for i in range(1, n)) / (n - 1)
        value = closeness_centrality(cycle_graph(n, directed=True), 0)
        result.check(abs(value - expected) <= EXACT, f"directed {n}-cycle closeness {value} != {expected}")
    return result


def set_partitions(items: list[int]) -> list[list[list[int]]]:
    if not items:
        return [[]]
    first, rest = items[0], items[1:]
    partitions = []
    for smaller in set_partitions(rest):
        for i in range(len(smaller)):
            partitions.append([*smaller[:i], [first, *smaller[i]], *smaller[i + 1 :]])
        partitions.append([[first], *smaller])
    return partitions


def concealment_suite(quick: bool, seed: int) -> SuiteResult:  # noqa: ARG001
    result = SuiteResult("concealment bounds and endpoints")
    params = ConcealmentParams(alpha=0.5)
    # A hidden group that is exactly one detected community is fully exposed.
    exposed = CommunityStructure.from_sets([[0, 1, 2], [3, 4, 5], [6, 7]], 8)
    value = mu(HiddenGroup.of([0, 1, 2]), exposed, params, 8)
    result.check(abs(value) <= EXACT, f"exposed group scored {value}, expected 0")
    # Every member in its own community, every non-member next to a member.
    spread = CommunityStructure.from_sets([[0, 3], [1, 4], [2, 5]], 6)
    value = mu(HiddenGroup.of([0, 1, 2]), spread, params, 6)
    result.check(abs(value - 1) <= EXACT, f"fully spread group scored {value}, expected 1")

    for n in range(1, 6 if quick else 7):
        nodes = list(range(n))
        for partition in set_partitions(nodes):
            cs = CommunityStructure.from_sets(partition, n)
            for size in range(1, n + 1):
                for members in itertools.combinations(nodes, size):
                    group = HiddenGroup.of(members)
                    values = (mu_prime(group, cs), mu_double_prime(group, cs, n), mu(group, cs, params, n))
                    result.check(
                        all(-EXACT <= v <= 1 + EXACT for v in values),
                        f"concealment {values} out of range for {members} in {partition}",
                    )
    return result


def roam_suite(quick: bool, seed: int) -> SuiteResult:
    result = SuiteResult("ROAM single-step bounds")
    rng = derive_rng(seed, 2)
    done = 0
    target = 100 if quick else 1000
    while done < target:
        n = int(rng.integers(5, 13))
        g = erdos_renyi(n, float(rng.uniform(2.0, n - 1)), int(rng.integers(2**32)))
        if not is_connected(g):
            continue
        v = int(rng.integers(n))
        cfg = RoamConfig(budget=int(rng.integers(1, 5)))
        try:
            after, _ = roam_step(g, v, cfg)
        except RoamError:
            continue
        done += 1
        result.check(after.degree(v) == g.degree(v) - 1, f"degree of {v} did not drop by 1 on {g.edges()}")
        if is_connected(after):
            before_c, after_c = closeness_centrality(g, v), closeness_centrality(after, v)
            result.check(after_c <= before_c + EXACT, f"closeness of {v} rose {before_c} -> {after_c}")
        before_b, after_b = betweenness_centrality(g)[v], betweenness_centrality(after)[v]
        result.check(after_b <= before_b + EXACT, f"betweenness of {v} rose {before_b} -> {after_b}")
    return result


def influence_fixtures() -> list[Graph]:
    return [
        Graph(2, [(0, 1)], directed=True),
        path_graph(3, directed=True),
        Graph(4, [(0, 1), (0, 2), (1, 3), (2, 3)], directed=True),
        star_graph(4),
        cycle_graph(5),
        complete_graph(4),
        Graph(5, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)], directed=True),
    ]


def influence_suite(quick: bool, seed: int) -> SuiteResult:
    result = SuiteResult("Monte Carlo influence vs exact enumeration")
    seeds = [seed] if quick else [seed + offset for offset in range(5)]
    for g in influence_fixtures():
        exact = {InfluenceModel.IC: exact_influence_ic(g, 0, 0.15).total, InfluenceModel.LT: exact_influence_lt(g, 0).total}
        for model, expected in exact.items():
            for mc_seed in seeds:
                cfg = InfluenceConfig(model=model, p=0.15, samples=100_000, seed=mc_seed)
                estimate = estimate_influence(g, 0, cfg).total
                result.check(
                    abs(estimate - expected) <= MC_TOLERANCE,
                    f"{model.value} estimate {estimate:.4f} vs exact {expected:.4f} on {g!r}",
                )
    return result


def reduction_suite(quick: bool, seed: int) -> SuiteResult:
    result = SuiteResult("hardness gadget equivalences")
    for directed, sizes in ((False, (3, 4) if quick else (3, 4, 5)), (True, (3,))):
        for n_prime in sizes:
            for g_prime in connected_graphs(n_prime, directed):
                gadget = closeness_gadget(g_prime, 0)
                achieved = optimal_disguise(gadget.disguise_problem()).value
                hamiltonian = brute_force_hamiltonian(g_prime)
                reaches = abs(achieved - gadget.target_value) <= EXACT
                result.check(
                    reaches == hamiltonian,
                    f"closeness gadget on {g_prime.edges()} reached q={reaches}, Hamiltonian={hamiltonian}",
                )

    rng = derive_rng(seed, 3)
    for _ in range(10 if quick else 50):
        sc = random_set_cover(int(rng.integers(1, 5)), int(rng.integers(1, 5)), rng)
        k_star = brute_force_set_cover(sc)
        for directed in (False, True):
            gadget = betweenness_gadget(sc, directed)
            at_k = optimal_disguise(gadget.disguise_problem(k_star)).value
            result.check(abs(at_k - gadget.target_value) <= EXACT, f"betweenness gadget misses q with k*={k_star}")
            if k_star > 1:
                below = optimal_disguise(gadget.disguise_problem(k_star - 1)).value
                result.check(below > gadget.target_value + EXACT, "betweenness gadget reaches q below k*")
            for build in (ic_setcover_gadget, lt_setcover_gadget):
                instance = build(sc, directed)
                for individual in (True, False):
                    recovered = minimal_recovery(instance.recovery_problem(individual))
                    result.check(
                        recovered.size == k_star,
                        f"{instance.name} gadget ({'individual' if individual else 'global'}, "
                        f"directed={directed}) needs {recovered.size} links, set cover needs {k_star} on {sc}",
                    )
    return result


def sample_dominant_specs(rng: np.random.Generator, count: int) -> list[LieutenantSpec]:
    specs = []
    while len(specs) < count:
        k = int(rng.integers(1, 8))
        c = int(rng.integers(1, k + 1))
        n = int(rng.integers(2 * k + 2, 2 * k + 120))
        spec = LieutenantSpec(n=n, k=k, c=c)
        if check_dominance_precondition(spec)[1]:
            specs.append(spec)
    return specs


def lieutenant_suite(quick: bool, seed: int) -> SuiteResult:
    result = SuiteResult("lieutenant dominance")
    for spec in sample_dominant_specs(derive_rng(seed, 4), 10 if quick else 50):
        g, roles = build_lieutenant(spec)
        gaps = centrality_gaps(g, roles)
        result.check(all(gap > 0 for gap in gaps.values()), f"{spec} leaves gaps {gaps}")
    return result


SUITES: list[Callable[[bool, int], SuiteResult]] = [
    centrality_suite,
    closed_form_suite,
    concealment_suite,
    roam_suite,
    influence_suite,
    reduction_suite,
    lieutenant_suite,
]


def run_verification(quick: bool = False, seed: int = 0) -> list[SuiteResult]:
    """Run every suite; oracle suites ignore ``seed`` apart from which random instances they draw."""
    results = []
    for suite in SUITES:
        logger.info("Running %s", suite.__name__)
        outcome = suite(quick, seed)
        logger.info("%s", outcome.summary().splitlines()[0])
        results.append(outcome)
    return results


def render_report(results: list[SuiteResult]) -> str:
    lines = [result.summary() for result in results]
    failed = sum(1 for result in results if not result.passed)
    lines.append(f"{len(results) - failed}/{len(results)} suites passed")
    return "\n".join(lines) + "\n"
