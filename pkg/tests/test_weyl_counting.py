from minpart.numerics.weyl_counting import (CSV_COLUMNS, check_universal_bound, check_wq, min_t_for_wq, n_square_counts,
                                            n_square_exact, square_eigenvalues_below, t_grid, violation_summary)
from minpart.functors.counting_bound import CorrectedCountingBound, PrintedCountingBound, counting_bound_from_name
from minpart.numerics.magnetic_operator import assemble_laplacian
from minpart.numerics.eigensolver import count_below
from minpart.numerics.geometry import build_grid
from minpart.data_structs.domain import DomainSpec
from minpart.errors import ThresholdNotFound

import numpy as np
import pytest
import math


@pytest.mark.parametrize("t, expected", [(0.0, 0), (2.0, 0), (5.0, 1), (9.5, 4), (10.0, 6), (20.0, 26)])
def test_exact_count(t: float, expected: int):
    assert n_square_exact(t) == expected


def test_count_jumps_past_the_first_eigenvalue():
    t: float = math.pi * math.sqrt(2)
    assert n_square_exact(t * (1 - 1e-12)) == 0
    assert n_square_exact(t * (1 + 1e-12)) == 1


def test_vectorized_count_matches_the_scalar_one():
    ts = np.linspace(0.5, 30, 300)
    assert n_square_counts(ts).tolist() == [n_square_exact(t) for t in ts]
    assert n_square_counts([]).size == 0


def test_square_eigenvalues_below():
    eigenvalues = square_eigenvalues_below(10.0)
    assert np.allclose(eigenvalues / math.pi ** 2, [2, 5, 5, 8, 10, 10])


def test_negative_t_is_rejected():
    with pytest.raises(ValueError):
        n_square_exact(-1.0)


def test_bound_coefficients():
    printed = PrintedCountingBound()
    corrected = CorrectedCountingBound()
    assert printed.name == "paper"
    assert printed(2.0) == pytest.approx(1 / math.pi - 3 / math.pi ** 2)
    assert corrected(2.0) == pytest.approx(1 / math.pi - 4 / math.pi + 1)
    assert counting_bound_from_name("corrected").name == "corrected"
    with pytest.raises(ValueError):
        counting_bound_from_name("weyl")


def test_printed_bound_fails_at_small_t():
    reports = {report.t: report for report in check_universal_bound([2.0, 4.4, 10.0])}
    assert not reports[2.0].satisfied_paper
    assert not reports[4.4].satisfied_paper
    assert reports[4.4].n_exact == 0
    assert reports[4.4].bound_paper == pytest.approx(19.36 / (4 * math.pi) - 8.8 / math.pi ** 2 + 1 / math.pi ** 2)


def test_corrected_bound_fails_only_near_two():
    end: float = 4 - math.sqrt(16 - 4 * math.pi)
    reports = check_universal_bound(t_grid(2.0, 50.0, 0.01))
    failing = [report.t for report in reports if not report.satisfied_corrected]
    assert failing
    assert max(failing) < end
    assert min(failing) == 2.0
    assert all(report.satisfied_corrected for report in reports if report.t > end + 1e-9)


def test_corrected_bound_holds_up_to_500():
    reports = check_universal_bound(t_grid(2.15, 500.0, 0.5))
    assert all(report.satisfied_corrected for report in reports)


# Midpoints between consecutive values of m² + n², far from the discrete eigenvalues at h = 1/64.
GAP_MIDPOINTS: tuple[float, ...] = (3, 6.5, 9, 11.5, 15, 19, 22.5, 27.5, 35.5, 43)


def test_exact_count_matches_the_discrete_square():
    operator = assemble_laplacian(build_grid(DomainSpec.unit_square(), 1 / 64))
    for q in GAP_MIDPOINTS:
        t = math.pi * math.sqrt(q)
        assert count_below(operator, t * t) == n_square_exact(t)


def test_weyl_asymptotic_at_large_t():
    t: float = 500.0
    count = n_square_exact(t)
    leading = t * t / (4 * math.pi)
    assert count == pytest.approx(leading, rel=0.05)
    assert count == pytest.approx(leading - t / math.pi, rel=0.01)


def test_scan_below_two_is_rejected():
    with pytest.raises(ValueError):
        check_universal_bound([1.5, 2.0])


def test_csv_row_order():
    report = check_universal_bound([20.0])[0]
    assert CSV_COLUMNS == ("t", "n_exact", "bound_paper", "ok_paper", "bound_corrected", "ok_corrected")
    assert report.row() == (20.0, 26, report.bound_paper, report.satisfied_paper, report.bound_corrected, True)


def test_violation_summary():
    summary = violation_summary(check_universal_bound(t_grid(2.0, 3.0, 0.1)))
    assert summary["rows"] == 11
    assert summary["corrected"]["violations"] == 2
    assert summary["corrected"]["first"] == 2.0
    assert summary["corrected"]["last"] == 2.1
    assert summary["paper"]["violations"] >= 1


def test_t_grid_includes_the_end():
    grid = t_grid(2.0, 3.0, 0.25)
    assert grid.tolist() == [2.0, 2.25, 2.5, 2.75, 3.0]
    with pytest.raises(ValueError):
        t_grid(3.0, 2.0, 0.1)


def test_check_wq():
    assert not check_wq(0.05, 10.0)
    assert check_wq(0.9, 10.0)
    with pytest.raises(ValueError):
        check_wq(1.5, 10.0)


def test_min_t_for_wq():
    threshold = min_t_for_wq(0.5, t_max=60.0)
    assert 2.0 <= threshold.empirical <= 60.0
    assert check_wq(0.5, threshold.empirical)
    assert threshold.analytic_paper == pytest.approx(8 / (math.pi * 0.5))
    assert threshold.analytic_corrected == pytest.approx(8 / 0.5)
    assert threshold.sharp_corrected <= threshold.analytic_corrected


def test_min_t_for_wq_not_found():
    with pytest.raises(ThresholdNotFound):
        min_t_for_wq(0.05, t_max=10.0)
