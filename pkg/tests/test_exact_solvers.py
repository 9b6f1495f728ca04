import math

import pytest

from data_gen import barabasi_albert, star_graph
from measures import CentralityKind, InfluenceModel
from network import Graph
from oracles import (
    DisguiseProblem,
    RecoveryProblem,
    SearchSpaceError,
    minimal_recovery,
    optimal_disguise,
    plan_count,
)


@pytest.mark.parametrize(("candidates", "budget", "expected"), [(3, 1, 4), (2, 5, 4), (7, 2, 29), (0, 3, 1)])
def test_plan_count(candidates, budget, expected):
    assert plan_count(candidates, budget) == expected


def test_connectivity_requirement_blocks_leaf_removal():
    problem = DisguiseProblem(graph=star_graph(3), v_dagger=0, budget=1, kind=CentralityKind.DEGREE)
    kept = optimal_disguise(problem)
    assert kept.feasible
    assert kept.plan.is_empty
    assert kept.value == 1.0
    assert kept.plans_checked == 1 + 3 + 3

    free = optimal_disguise(problem, require_connected=False)
    assert free.plan.removals == ((0, 1),)
    assert math.isclose(free.value, 2 / 3)


def test_forbidden_moves_are_respected():
    problem = DisguiseProblem(
        graph=star_graph(3),
        v_dagger=0,
        budget=1,
        kind=CentralityKind.DEGREE,
        forbidden_removals=frozenset({(0, 1), (2, 0)}),
    )
    result = optimal_disguise(problem, require_connected=False)
    assert result.plan.removals == ((0, 3),)


def test_no_connected_plan_is_infeasible():
    problem = DisguiseProblem(graph=Graph(4, [(0, 1)]), v_dagger=0, budget=1, kind=CentralityKind.DEGREE)
    result = optimal_disguise(problem)
    assert not result.feasible
    assert result.plan.is_empty
    assert math.isclose(result.value, 1 / 3)


def test_disguise_search_space_cap():
    problem = DisguiseProblem(graph=barabasi_albert(40, 3, seed=0), v_dagger=0, budget=3, kind=CentralityKind.DEGREE)
    with pytest.raises(SearchSpaceError):
        optimal_disguise(problem)


def test_recovery_needs_exactly_one_target():
    with pytest.raises(ValueError, match="exactly one"):
        RecoveryProblem(graph=Graph(3), v_dagger=0, model=InfluenceModel.IC)
    with pytest.raises(ValueError, match="exactly one"):
        RecoveryProblem(graph=Graph(3), v_dagger=0, model=InfluenceModel.IC, target_total=1.0, target_per_node={1: 1})


def test_zero_target_needs_no_links():
    problem = RecoveryProblem(graph=Graph(4, [(1, 2)]), v_dagger=0, model=InfluenceModel.IC, p=1.0, target_total=0.0)
    result = minimal_recovery(problem)
    assert result.feasible
    assert result.additions == ()
    assert result.size == 0


def test_smallest_recovery_is_found_first():
    g = Graph(4, [(1, 2), (2, 3)])
    problem = RecoveryProblem(graph=g, v_dagger=0, model=InfluenceModel.IC, p=1.0, target_total=3.0)
    result = minimal_recovery(problem)
    assert result.additions == ((0, 1),)
    assert result.total == 3.0


def test_individual_recovery_targets():
    g = Graph(4, [(1, 2)])
    problem = RecoveryProblem(
        graph=g,
        v_dagger=0,
        model=InfluenceModel.IC,
        p=1.0,
        target_per_node={2: 1.0, 3: 1.0},
    )
    result = minimal_recovery(problem)
    assert result.size == 2
    assert set(result.additions) <= {(0, 1), (0, 2), (0, 3), (1, 3), (2, 3)}


def test_unreachable_target_is_infeasible():
    g = Graph(3, [(1, 2)])
    problem = RecoveryProblem(
        graph=g,
        v_dagger=0,
        model=InfluenceModel.IC,
        p=1.0,
        forbidden_additions=frozenset({(0, 2)}),
        target_total=5.0,
    )
    result = minimal_recovery(problem)
    assert not result.feasible
    assert result.additions is None
    assert result.size is None
    assert result.total == 2.0


def test_recovery_search_space_cap():
    problem = RecoveryProblem(graph=Graph(10), v_dagger=0, model=InfluenceModel.IC, target_total=1.0)
    with pytest.raises(SearchSpaceError):
        minimal_recovery(problem)
