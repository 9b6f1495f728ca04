import numpy as np
import pytest

from data_gen import barabasi_albert, complete_graph, disjoint_union, path_graph
from evasion import DiceConfig, DiceError, dice_round, dice_run, round_count, select_target_community
from measures import CommunityStructure, Detector, DetectorKind, HiddenGroup
from network import Graph

LOUVAIN = Detector(kind=DetectorKind.LOUVAIN)


def clique_with_tail(size: int = 4, tail: int = 10) -> Graph:
    """A ``size``-clique on ``0..size-1`` whose last node starts a path of ``tail`` more nodes."""
    g = disjoint_union(complete_graph(size), path_graph(tail))
    return g.add_edge(size - 1, size)


def assert_plan_respects_group(plan, group, budget):
    assert plan.cost <= budget
    assert all(u in group.members and v in group.members for u, v in plan.removals)
    assert all((u in group.members) != (v in group.members) for u, v in plan.additions)


def test_config_validation():
    with pytest.raises(DiceError):
        DiceConfig(budget=0)
    with pytest.raises(DiceError):
        DiceConfig(budget=2, d=3)


def test_pure_internal_disconnection(rng):
    group = HiddenGroup.of(range(4))
    after, plan = dice_round(clique_with_tail(), group, DiceConfig(budget=4, d=4), rng)
    assert len(plan.removals) == 4
    assert plan.additions == ()
    assert len(after.subgraph_edges(range(4))) == 2


def test_pure_external_connection(rng):
    group = HiddenGroup.of(range(4))
    after, plan = dice_round(clique_with_tail(), group, DiceConfig(budget=4, d=0), rng)
    assert plan.removals == ()
    assert len(plan.additions) == 4
    assert after.edge_count == clique_with_tail().edge_count + 4
    assert_plan_respects_group(plan, group, 4)


def test_mixed_round_on_a_triangle(rng):
    group = HiddenGroup.of(range(3))
    _, plan = dice_round(clique_with_tail(3), group, DiceConfig(budget=4, d=2), rng)
    assert len(plan.removals) == 2
    assert len(plan.additions) == 2
    assert_plan_respects_group(plan, group, 4)


def test_leftover_removal_budget_is_not_converted(rng):
    group = HiddenGroup.of([0, 1])
    _, plan = dice_round(Graph(6, [(0, 1), (1, 2)]), group, DiceConfig(budget=4, d=3), rng)
    assert plan.removals == ((0, 1),)
    assert len(plan.additions) == 1


def test_skips_additions_when_no_pair_is_free(rng):
    g = Graph(3, [(0, 2), (1, 2)])
    _, plan = dice_round(g, HiddenGroup.of([0, 1]), DiceConfig(budget=2, d=0), rng)
    assert plan.additions == ()


def test_directed_additions_use_both_orientations():
    g = disjoint_union(complete_graph(3, directed=True), Graph(20, directed=True))
    group = HiddenGroup.of(range(3))
    inbound = outbound = 0
    for seed in range(20):
        _, plan = dice_round(g, group, DiceConfig(budget=3, d=0), np.random.default_rng(seed))
        inbound += sum(1 for _, v in plan.additions if v in group.members)
        outbound += sum(1 for u, _ in plan.additions if u in group.members)
    assert inbound > 0
    assert outbound > 0


def test_group_errors(rng):
    g = path_graph(4)
    with pytest.raises(DiceError):
        dice_round(g, HiddenGroup.of(range(4)), DiceConfig(budget=2, d=1), rng)
    with pytest.raises(DiceError):
        dice_round(g, HiddenGroup.of([7]), DiceConfig(), rng)
    _, plan = dice_round(g, HiddenGroup.of(range(4)), DiceConfig(budget=2, d=2), rng)
    assert len(plan.removals) == 2


def test_round_is_deterministic_per_stream():
    g = barabasi_albert(40, 3, seed=2)
    group = HiddenGroup.of(range(8))
    cfg = DiceConfig(budget=4, d=2)
    first = dice_round(g, group, cfg, np.random.default_rng(77))
    assert dice_round(g, group, cfg, np.random.default_rng(77)) == first


def test_select_target_community_takes_lower_median(rng):
    cs = CommunityStructure.from_sets([range(3), range(3, 8), range(8, 17)], 17)
    assert len(select_target_community(cs, rng)) == 5
    cs = CommunityStructure.from_sets([range(2), range(2, 5), range(5, 11), range(11, 21)], 21)
    assert len(select_target_community(cs, rng)) == 3


def test_select_target_community_breaks_ties_uniformly():
    cs = CommunityStructure.from_sets([range(4), range(4, 8), range(8, 12)], 12)
    picks = {select_target_community(cs, np.random.default_rng(seed)).members for seed in range(40)}
    assert len(picks) == 3


def test_round_count():
    assert round_count(HiddenGroup.of(range(12)), 4) == 3
    assert round_count(HiddenGroup.of(range(13)), 4) == 4


def test_run_starts_exposed_and_is_reproducible():
    g = barabasi_albert(60, 3, seed=5)
    cfg = DiceConfig(budget=4, d=2, seed=9)
    trajectory = dice_run(g, LOUVAIN, cfg, alpha=0.5)
    assert trajectory.rows[0].mu == 0.0
    assert trajectory.rows[0].pct_rounds == 0.0
    assert trajectory.rows[-1].pct_rounds == 100.0
    assert all(0.0 <= row.mu <= 1.0 for row in trajectory.rows)
    assert dice_run(g, LOUVAIN, cfg, alpha=0.5) == trajectory


def test_run_with_a_given_target():
    g = barabasi_albert(40, 3, seed=1)
    target = HiddenGroup.of(range(8))
    trajectory = dice_run(g, Detector(kind=DetectorKind.CNM), DiceConfig(budget=4, d=2), 0.5, target=target)
    assert [row.round for row in trajectory.rows] == [0, 1, 2]


@pytest.mark.slow
@pytest.mark.parametrize("d", [0, 2, 4])
def test_dice_raises_concealment_on_scale_free_networks(d):
    initial, final = [], []
    for seed in range(50):
        g = barabasi_albert(100, 3, seed=seed)
        trajectory = dice_run(g, LOUVAIN, DiceConfig(budget=4, d=d, seed=seed), alpha=0.5)
        initial.append(trajectory.rows[0].mu)
        final.append(trajectory.rows[-1].mu)
    assert np.mean(initial) == 0.0
    assert np.mean(final) > 0.0
