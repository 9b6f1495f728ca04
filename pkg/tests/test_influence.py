import itertools

import numpy as np
import pytest

from data_gen import complete_graph, cycle_graph, path_graph, star_graph
from measures import (
    InfluenceConfig,
    InfluenceError,
    InfluenceEstimate,
    InfluenceModel,
    estimate_influence,
    exact_influence_ic,
    exact_influence_lt,
    relative_influence,
    simulate_cascade,
)
from network import Graph

EDGE = Graph(2, [(0, 1)], directed=True)
CHAIN = path_graph(3, directed=True)
DIAMOND = Graph(4, [(0, 1), (0, 2), (1, 3), (2, 3)], directed=True)

FIXTURES = [
    EDGE,
    CHAIN,
    DIAMOND,
    star_graph(4),
    cycle_graph(5),
    complete_graph(4),
    Graph(5, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)], directed=True),
]


def test_config_validation():
    with pytest.raises(InfluenceError):
        InfluenceConfig(p=1.5)
    with pytest.raises(InfluenceError):
        InfluenceConfig(samples=0)
    assert InfluenceConfig(seed=1).with_seed(9).seed == 9


def test_ic_cascade_extremes(rng):
    cfg = InfluenceConfig(model=InfluenceModel.IC, p=1.0)
    assert simulate_cascade(EDGE, {0}, cfg, rng).activated == {0, 1}
    silent = InfluenceConfig(model=InfluenceModel.IC, p=0.0)
    assert simulate_cascade(complete_graph(5), {0, 3}, silent, rng).activated == {0, 3}


def test_ic_cascade_counts_rounds(rng):
    result = simulate_cascade(path_graph(4, directed=True), {0}, InfluenceConfig(p=1.0), rng)
    assert result.activated == {0, 1, 2, 3}
    assert result.rounds == 3


def test_lt_predecessor_free_node_activates_spontaneously(rng):
    result = simulate_cascade(Graph(2), {0}, InfluenceConfig(model=InfluenceModel.LT), rng)
    assert result.activated == {0, 1}


def test_lt_fixed_thresholds(rng):
    cfg = InfluenceConfig(model=InfluenceModel.LT)
    g = Graph(3, [(0, 2), (1, 2)], directed=True)
    assert simulate_cascade(g, {0}, cfg, rng, thresholds=[1, 1, 2]).activated == {0}
    assert simulate_cascade(g, {0}, cfg, rng, thresholds=[1, 1, 1]).activated == {0, 2}


def test_cascade_rejects_empty_seed_set(rng):
    with pytest.raises(InfluenceError):
        simulate_cascade(EDGE, set(), InfluenceConfig(), rng)
    with pytest.raises(InfluenceError):
        simulate_cascade(EDGE, {5}, InfluenceConfig(), rng)


def test_estimate_on_small_graphs():
    assert estimate_influence(EDGE, 0, InfluenceConfig(p=1.0, samples=500)).total == 1.0
    single = estimate_influence(EDGE, 0, InfluenceConfig(p=0.15, samples=100_000, seed=3)).total
    assert single == pytest.approx(0.15, abs=0.01)
    chain = estimate_influence(CHAIN, 0, InfluenceConfig(p=0.15, samples=100_000, seed=4)).total
    assert chain == pytest.approx(0.1725, abs=0.01)


def test_estimate_zeroes_the_source():
    estimate = estimate_influence(complete_graph(5), 2, InfluenceConfig(p=0.5, samples=2_000))
    assert estimate.per_node[2] == 0.0
    assert estimate.total == pytest.approx(sum(estimate.per_node))
    assert all(0.0 <= value <= 1.0 for value in estimate.per_node)
    assert estimate.total <= 4


def test_estimate_is_independent_of_worker_count(scale_free):
    for model in InfluenceModel:
        cfg = InfluenceConfig(model=model, samples=3_500, seed=11)
        assert estimate_influence(scale_free, 0, cfg, workers=1) == estimate_influence(scale_free, 0, cfg, workers=3)


def test_estimate_is_reproducible_and_seed_dependent(scale_free):
    cfg = InfluenceConfig(samples=2_000, seed=5)
    assert estimate_influence(scale_free, 1, cfg) == estimate_influence(scale_free, 1, cfg)
    assert estimate_influence(scale_free, 1, cfg) != estimate_influence(scale_free, 1, cfg.with_seed(6))


def test_exact_ic_on_small_graphs():
    assert exact_influence_ic(EDGE, 0, 0.15).total == pytest.approx(0.15)
    assert exact_influence_ic(DIAMOND, 0, 1.0).total == 3.0
    assert exact_influence_ic(CHAIN, 0, 0.15).total == pytest.approx(0.1725)


def test_exact_ic_undirected_edge_uses_one_coin():
    # Both endpoints of the triangle's far edge can fire, but each pair shares one coin.
    p = 0.3
    reach_one = p + (1 - p) * p * p
    assert exact_influence_ic(complete_graph(3), 0, p).total == pytest.approx(2 * reach_one)


def test_exact_ic_arc_probabilities_override():
    g = Graph(3, [(0, 1), (1, 2)])
    estimate = exact_influence_ic(g, 0, arc_probabilities={(0, 1): 1.0, (1, 2): 0.5})
    assert estimate.per_node == pytest.approx((0.0, 1.0, 0.5))


def test_exact_ic_caps_uncertain_edges():
    with pytest.raises(InfluenceError):
        exact_influence_ic(complete_graph(7), 0, 0.5)
    # Certain arcs are not branched on.
    assert exact_influence_ic(complete_graph(7), 0, 1.0).total == 6.0


@pytest.mark.slow
def test_exact_ic_is_monotone_under_edge_addition():
    for n in range(2, 6):
        pairs = list(itertools.combinations(range(n), 2))
        for mask in range(1 << len(pairs)):
            edges = [pair for bit, pair in enumerate(pairs) if mask >> bit & 1]
            g = Graph(n, edges)
            base = exact_influence_ic(g, 0, 0.4).total
            for u, v in g.non_edges():
                assert exact_influence_ic(g.add_edge(u, v), 0, 0.4).total >= base - 1e-12


def test_exact_lt_on_small_graphs():
    assert exact_influence_lt(path_graph(2), 0).total == pytest.approx(1.0)
    assert exact_influence_lt(Graph(1), 0).total == 0.0
    assert exact_influence_lt(Graph(2), 0).total == 1.0


def test_exact_lt_two_predecessors():
    # Node 1 may self-activate (threshold 0, probability 1/2); otherwise node 2 needs threshold <= 1.
    g = Graph(3, [(0, 2), (1, 2)])
    assert exact_influence_lt(g, 0).per_node[2] == pytest.approx(0.5 + 0.5 * 2 / 3)


def test_exact_lt_fixed_thresholds_are_deterministic():
    estimate = exact_influence_lt(path_graph(4, directed=True), 0, thresholds=[0, 1, 2, 1])
    assert estimate.per_node == (0.0, 1.0, 0.0, 0.0)


@pytest.mark.slow
@pytest.mark.parametrize("model", list(InfluenceModel))
def test_monte_carlo_matches_exact(model):
    for g in FIXTURES:
        exact = exact_influence_ic(g, 0, 0.15) if model is InfluenceModel.IC else exact_influence_lt(g, 0)
        for seed in range(5):
            cfg = InfluenceConfig(model=model, p=0.15, samples=100_000, seed=seed)
            assert estimate_influence(g, 0, cfg).total == pytest.approx(exact.total, abs=0.02)


def test_relative_influence():
    def estimate(total: float) -> InfluenceEstimate:
        return InfluenceEstimate(source=0, total=total, per_node=())

    assert relative_influence(estimate(1.5), estimate(3.0)) == 0.5
    assert relative_influence(estimate(0.0), estimate(0.0)) == 1.0
    assert relative_influence(estimate(1.0), estimate(0.0)) == np.inf
