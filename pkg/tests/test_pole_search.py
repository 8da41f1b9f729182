from minpart.numerics.pole_search import (objective_cache_info, objective_lambda_k, pole_insertion_effect,
                                          search_minimal_partition)
from minpart.errors import BudgetExhaustedWithoutImprovement, InvalidPoleCount, PoleOutsideDomain
from minpart.functors.objective import LambdaKObjective, assess_configuration, lambda_k
from minpart.data_structs.search import Evaluation, SearchData
from minpart.configs.search_configs import check_pole_count
from minpart.numerics.geometry import build_grid, snap_poles
from minpart.data_structs.domain import DomainSpec
from minpart.data_structs.grid import Grid, PoleConfig

import pytest
import math


def test_objective_caches_snapped_configurations(centered_pole_grid: Grid):
    objective = LambdaKObjective(centered_pole_grid, 1)
    first: float = objective([(0.5, 0.5)])
    assert objective.misses == 1
    assert objective([(0.51, 0.49)]) == first
    assert (objective.hits, objective.misses) == (1, 1)
    assert first == pytest.approx(lambda_k(centered_pole_grid, snap_poles(centered_pole_grid, [(0.5, 0.5)]), 1))


def test_objective_scores_invalid_poles_minus_infinity(centered_pole_grid: Grid):
    objective = LambdaKObjective(centered_pole_grid, 2)
    assert objective([(1.5, 0.5)]) == -math.inf
    assert objective([(0.5, 0.5), (0.51, 0.52)]) == -math.inf
    assert objective.misses == 0
    with pytest.raises(ValueError):
        LambdaKObjective(centered_pole_grid, 0)


def test_objective_is_order_independent(centered_pole_grid: Grid):
    objective = LambdaKObjective(centered_pole_grid, 3)
    objective([(0.3, 0.3), (0.7, 0.61)])
    objective([(0.7, 0.61), (0.3, 0.3)])
    assert (objective.hits, objective.misses) == (1, 1)


def test_objective_lambda_k():
    spec = DomainSpec.rectangle(1.5, 1.0)
    h: float = 1 / 13
    hits, misses = objective_cache_info(spec, 2, h)
    first: float = objective_lambda_k(spec, 2, [(0.60, 0.52)], h)
    second: float = objective_lambda_k(spec, 2, [(0.58, 0.53)], h)
    assert first == second
    assert objective_cache_info(spec, 2, h) == (hits + 1, misses + 1)
    with pytest.raises(PoleOutsideDomain):
        objective_lambda_k(spec, 2, [(2.0, 0.5)], h)


def test_pole_raises_the_ground_energy(unit_square: DomainSpec):
    effect = pole_insertion_effect(unit_square, 1 / 15, (0.5, 0.5))
    assert effect.raised
    assert effect.with_pole > effect.without_pole


@pytest.mark.parametrize("k, ell", [(1, 0), (2, 0), (3, 2), (5, 6)])
def test_admissible_pole_counts(k: int, ell: int):
    check_pole_count(k, ell)


@pytest.mark.parametrize("k, ell", [(2, 1), (3, 3), (2, -1)])
def test_inadmissible_pole_counts(k: int, ell: int):
    with pytest.raises(InvalidPoleCount):
        check_pole_count(k, ell)


def test_search_without_poles(unit_square: DomainSpec):
    result = search_minimal_partition(unit_square, 1, 0, 1 / 16, budget=5)
    assert result.evaluations == 1
    assert len(result.trace) == 1
    assert len(result.poles) == 0
    assert not result.improved
    assert result.partition.k == 1
    assert result.consistent
    assert result.lambda_k == pytest.approx(8 * 256 * math.sin(math.pi / 32) ** 2)


def test_search_respects_the_budget(unit_square: DomainSpec):
    trace: list[SearchData] = []
    result = search_minimal_partition(unit_square, 3, 2, 1 / 12, budget=30, restarts=2, callback=trace.append)
    assert result.evaluations <= 30
    assert len(trace) == len(result.trace)
    best_values = [data.best_value for data in result.trace]
    assert best_values == sorted(best_values)
    if result.feasible:
        assert result.lambda_k == pytest.approx(max(best_values))
    else:
        assert all(value == -math.inf for value in best_values)
    assert all(data.domains >= 1 for data in result.trace)
    assert len(result.poles) == 2
    assert result.trace[0].event == "start"
    summary = result.to_summary()
    assert summary["poles"] == [list(point) for point in result.poles.points]
    assert len(summary["trace"]) == len(trace)


def test_search_is_reproducible(unit_square: DomainSpec):
    first = search_minimal_partition(unit_square, 3, 1, 1 / 12, budget=12, restarts=1, seed=7)
    second = search_minimal_partition(unit_square, 3, 1, 1 / 12, budget=12, restarts=1, seed=7)
    assert first.poles == second.poles
    assert first.lambda_k == second.lambda_k


def test_exhausted_budget_warns(unit_square: DomainSpec):
    with pytest.warns(BudgetExhaustedWithoutImprovement):
        result = search_minimal_partition(unit_square, 3, 1, 1 / 12, budget=1, restarts=2)
    assert result.evaluations == 1
    assert result.restarts == 1
    assert not result.improved


def test_search_rejects_pole_counts(unit_square: DomainSpec):
    with pytest.raises(InvalidPoleCount):
        search_minimal_partition(unit_square, 2, 1, 1 / 12, budget=10)


@pytest.mark.slow
def test_parallel_search_matches_the_sequential_one(unit_square: DomainSpec):
    sequential = search_minimal_partition(unit_square, 3, 2, 1 / 12, budget=40, restarts=2, processes=1)
    parallel = search_minimal_partition(unit_square, 3, 2, 1 / 12, budget=40, restarts=2, processes=2)
    assert parallel.poles == sequential.poles
    assert parallel.lambda_k == pytest.approx(sequential.lambda_k)
    assert parallel.evaluations == sequential.evaluations



def test_evaluation_rank_puts_feasibility_first():
    feasible = Evaluation(60.0, 3)
    higher_but_short = Evaluation(70.0, 2)
    assert feasible.feasible(3)
    assert not higher_but_short.feasible(3)
    assert max([higher_but_short, feasible], key=lambda evaluation: evaluation.rank(3)) == feasible
    assert Evaluation(65.0, 3).rank(3) > feasible.rank(3)
    assert Evaluation(40.0, 2).rank(3) < higher_but_short.rank(3)


def test_square_without_poles_has_no_three_domain_eigenfunction(unit_square: DomainSpec):
    objective = LambdaKObjective(build_grid(unit_square, 1 / 16), 3)
    evaluation = objective.assess(PoleConfig())
    assert evaluation.domains == 2
    assert not evaluation.feasible(3)
    assert objective([]) == evaluation.value
    assert objective.misses == 1
    assert evaluation == assess_configuration(objective.grid, PoleConfig(), 3)


def test_search_reports_a_missing_domain(unit_square: DomainSpec):
    result = search_minimal_partition(unit_square, 3, 0, 1 / 24, budget=5)
    assert result.partition.k == 2
    assert not result.feasible
    assert not result.consistent
    assert result.trace[0].domains == 2
    assert result.trace[0].best_value == -math.inf
    summary = result.to_summary()
    assert summary["domains"] == 2
    assert not summary["feasible"]
    assert not summary["consistent"]


@pytest.mark.slow
def test_two_partition_of_the_square(unit_square: DomainSpec):
    result = search_minimal_partition(unit_square, 2, 0, 1 / 96, budget=200)
    assert result.feasible
    assert result.consistent
    assert result.lambda_k == pytest.approx(5 * math.pi ** 2, rel=5e-3)
    assert result.L_k == pytest.approx(5 * math.pi ** 2, rel=5e-3)


@pytest.mark.slow
def test_three_partitions_of_the_square_by_pole_count(unit_square: DomainSpec):
    h: float = 1 / 96
    results = {ell: search_minimal_partition(unit_square, 3, ell, h, budget=200, restarts=4) for ell in (0, 1, 2)}
    assert not results[0].feasible
    assert not results[0].consistent
    best = results[2]
    assert best.feasible
    assert len(best.poles) == 2
    assert best.equipartition_spread < 1.05
    assert best.euler.passed
    assert all(association.odd for association in best.partition.pole_associations)
    assert "feasible" in results[1].to_summary()
