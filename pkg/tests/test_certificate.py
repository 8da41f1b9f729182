from minpart.numerics.certificate import (certify, check_superadditivity, evaluate_z1, nu_lower_bound, tile_squares,
                                          z1_rhs)
from minpart.functors.counting_bound import CorrectedCountingBound, PrintedCountingBound
from minpart.errors import ConfigError, InadmissibleEps, SideTooLarge
from minpart.numerics.constants_ledger import alpha_threshold, eps_max
from minpart.numerics.geometry import build_grid, snap_poles
from minpart.data_structs.domain import DomainSpec, Point

import pytest
import math

J: float = 2.404825557695773 ** 2


def test_tiling_of_the_unit_square(unit_square: DomainSpec):
    tiling = tile_squares(unit_square, [], 100.0, 1.0)
    assert tiling.side == pytest.approx(0.1)
    assert tiling.kept == 100
    assert tiling.excluded_by_pole == 0
    assert tiling.covered_area == pytest.approx(1.0)
    assert tiling.boundary_constant == pytest.approx(0.0, abs=1e-9)


def test_pole_removes_one_square(unit_square: DomainSpec):
    tiling = tile_squares(unit_square, [(0.55, 0.55)], 100.0, 1.0)
    assert tiling.kept == 99
    assert tiling.excluded_by_pole == 1
    assert tiling.offset == (0.0, 0.0)
    assert all(not (x0 <= 0.55 <= x0 + tiling.side and y0 <= 0.55 <= y0 + tiling.side) for x0, y0 in tiling.squares)
    assert tiling.area_bound_holds


def test_tiling_of_the_disk():
    disk = DomainSpec.disk()
    tiling = tile_squares(disk, [(0.05, 0.05)], 400.0, 2.0)
    assert tiling.kept > 0
    assert all(disk.square_inside(x0, y0, tiling.side) for x0, y0 in tiling.squares)
    assert tiling.covered_area < disk.area
    assert tiling.area_bound_holds


def test_tiling_errors(unit_square: DomainSpec):
    with pytest.raises(ConfigError):
        tile_squares(unit_square, [], 100.0, 0.5)
    with pytest.raises(ConfigError):
        tile_squares(unit_square, [], 0.0, 2.0)
    with pytest.raises(SideTooLarge):
        tile_squares(unit_square, [], 1.0, 2.0)


def test_superadditivity_on_the_square(unit_square: DomainSpec):
    tiling = tile_squares(unit_square, [], 200.0, 5.0)
    assert tiling.kept == 4
    report = check_superadditivity(unit_square, [], 200.0, tiling, 1 / 32)
    assert report.per_square == 1
    assert report.tiled_sum == 4
    assert report.domain_count == 13
    assert report.holds


SQUARE_GROUND: float = 2 * math.pi ** 2
DISK_GROUND: float = J


@pytest.mark.parametrize("domain, h, points, lam, t", [
    (DomainSpec.unit_square(), 1 / 32, [], 0.99 * SQUARE_GROUND, 1.0),
    (DomainSpec.unit_square(), 1 / 32, [], 1000.0, 4.0),
    (DomainSpec.unit_square(), 1 / 32, [(0.51, 0.47)], 500.0, 5.0),
    (DomainSpec.unit_square(), 1 / 32, [(0.5, 0.5)], 10 * SQUARE_GROUND, 5.0),
    (DomainSpec.unit_square(), 1 / 32, [(0.3, 0.3), (0.7, 0.61)], 50 * SQUARE_GROUND, 8.0),
    (DomainSpec.unit_square(), 1 / 32, [(0.2, 0.7), (0.5, 0.35), (0.8, 0.8)], 50 * SQUARE_GROUND, 6.0),
    (DomainSpec.disk(), 1 / 20, [], 10 * DISK_GROUND, 5.0),
    (DomainSpec.disk(), 1 / 20, [(0.05, 0.05), (-0.4, 0.3)], 10 * DISK_GROUND, 5.0),
    (DomainSpec.disk(), 1 / 20, [(0.05, 0.05)], 50 * DISK_GROUND, 6.0),
    (DomainSpec.disk(), 1 / 20, [(0.05, 0.05), (-0.4, 0.3), (0.3, -0.5)], 50 * DISK_GROUND, 8.0)
])
def test_superadditivity_on_scripted_instances(domain: DomainSpec, h: float, points: list[Point], lam: float, t: float):
    poles = snap_poles(build_grid(domain, h), points)
    tiling = tile_squares(domain, poles, lam, t)
    report = check_superadditivity(domain, poles, lam, tiling, h)
    assert report.squares == tiling.kept
    assert report.tiled_sum <= report.domain_count + report.slack
    assert report.holds


def test_counting_inequality_at_faber_krahn_equality():
    eps: float = 0.1
    k: int = 10
    report = evaluate_z1(k, math.pi * J * k, 0, 20.0, eps, 1.0)
    assert report.rhs_over_k == pytest.approx(J * (1 - eps) / 4)
    assert report.contradiction
    assert report.faber_krahn.satisfied
    assert report.alpha == 0.0
    assert not report.nu_lower_bound_holds


def test_alpha_threshold_gives_a_unit_margin():
    eps: float = 0.1
    t: float = 20.0
    k: int = 10
    alpha: float = alpha_threshold(eps, t)
    assert z1_rhs(math.pi * J * k, alpha * k, t, eps, 1.0) / k == pytest.approx(1.0)
    assert z1_rhs(math.pi * J * k, 2.0 * k, t, eps, 1.0) < 0


def test_counting_inequality_errors():
    with pytest.raises(InadmissibleEps):
        evaluate_z1(10, 200.0, 1, 20.0, 0.5, 1.0)
    with pytest.raises(ConfigError):
        evaluate_z1(0, 200.0, 1, 20.0, 0.1, 1.0)
    with pytest.raises(ConfigError):
        evaluate_z1(10, 200.0, -1, 20.0, 0.1, 1.0)


def test_report_bound_name():
    report = evaluate_z1(4, 100.0, 1, 30.0, 0.2, 1.0, bound=CorrectedCountingBound())
    assert report.bound == "corrected"
    assert report.t_source == "analytic"
    assert report.certified_nu_lower_bound == pytest.approx(min(1.0, report.c0 * 4))


def test_nu_lower_bound():
    bound = nu_lower_bound(100)
    assert bound.paper == pytest.approx(1.54, abs=0.01)
    assert bound.corrected == pytest.approx(0.156, abs=0.001)
    assert bound.conjectured == 200
    assert bound.paper_ceiling == 2
    assert not bound.paper_vacuous
    assert bound.corrected_vacuous
    with pytest.raises(ConfigError):
        nu_lower_bound(0)


def test_certify_the_square(unit_square: DomainSpec):
    report = certify(unit_square, 4, [], 1 / 32, L_k=200.0, t=5.0)
    assert report.t_source == "given"
    assert report.eps == pytest.approx(eps_max())
    assert report.bound == PrintedCountingBound().name
    assert report.tiling.kept == 4
    assert report.superadditivity.holds
    assert report.boundary_deficit == pytest.approx(1.0 - 4 * 25 / 200)
    summary = report.to_summary()
    assert {"verdicts", "tiling", "superadditivity", "faber_krahn", "rhs", "c0"} <= set(summary)
    assert "squares" not in summary["tiling"]
    assert summary["superadditivity"]["tiled_sum"] == 4


def test_certify_with_the_computed_energy(unit_square: DomainSpec):
    report = certify(unit_square, 1, [(0.51, 0.47)], 1 / 16, t=2.0, bound=CorrectedCountingBound())
    assert report.L_k > 2 * math.pi ** 2
    assert report.ell == 1
    assert report.superadditivity.per_square == 0
    assert report.bound == "corrected"


def test_certify_rejects_eps(unit_square: DomainSpec):
    with pytest.raises(InadmissibleEps):
        certify(unit_square, 4, [], 1 / 16, L_k=200.0, eps=0.5, t=5.0)
