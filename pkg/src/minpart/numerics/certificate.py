"""Finite-k counting certificate for the lower bound ``ν_k >= c₀·k``.

The pipeline tiles ``Ω`` with pole-free squares of side ``t/√λ``, checks that the Dirichlet counts of the squares add
up to at most the count of the Aharonov-Bohm operator on ``Ω``, and evaluates

    k = n(𝔏_k, Ω) >= (1 - ε)·t²/(4π) · (A(Ω) - ℓ·t²/𝔏_k - deficit) · 𝔏_k/t²

where ``deficit`` is the uncovered area that the tiling actually measures.
"""
from minpart.numerics.constants_ledger import alpha_threshold, c0_of_eps, check_eps, eps_max, faber_krahn_lhs, FaberKrahnCheck
from minpart.functors.counting_bound import CorrectedCountingBound, CountingBound, PrintedCountingBound
from minpart.numerics.geometry import build_grid, default_cuts, snap_poles
from minpart.numerics.magnetic_operator import SparseOperator, assemble_ab
from minpart.numerics.eigensolver import count_below_perturbed, smallest_eigenpairs
from minpart.errors import ConfigError, InadmissibleEps, SideTooLarge, SuperadditivityViolation
from minpart.numerics.weyl_counting import n_square_exact
from minpart.data_structs.domain import DomainSpec, Point
from minpart.data_structs.grid import Grid, PoleConfig

from collections.abc import Sequence
from dataclasses import asdict, dataclass, replace
from typing import Any
import numpy as np
import logging
import math

logger = logging.getLogger(__name__)

TILING_OFFSETS: tuple[float, ...] = (0.0, 0.25, 0.5, 0.75)
POLE_TOLERANCE: float = 1e-12

@dataclass(frozen=True)
class TilingReport:
    """Pole-free squares of side ``t/√λ`` packed in ``Ω`` on a translated lattice.

    ``squares`` holds the lower-left corners of the kept squares.
    ``boundary_constant`` is the measured ``C`` for which ``covered_area = A(Ω) - ℓ·side² - C/√λ`` when the poles
    cost at most one square each, ``0`` if they cost less.
    """
    lam: float
    t: float
    side: float
    offset: tuple[float, float]
    squares: tuple[Point, ...]
    excluded_by_pole: int
    domain_area: float
    pole_count: int

    @property
    def kept(self) -> int:
        return len(self.squares)

    @property
    def covered_area(self) -> float:
        return self.kept * self.side * self.side

    @property
    def excluded_by_boundary_area(self) -> float:
        return self.domain_area - self.covered_area - self.excluded_by_pole * self.side * self.side

    @property
    def boundary_constant(self) -> float:
        return max(0.0, self.domain_area - self.pole_count * self.side * self.side - self.covered_area) * math.sqrt(self.lam)

    @property
    def area_lower_bound(self) -> float:
        return self.domain_area - self.pole_count * self.side * self.side - self.boundary_constant / math.sqrt(self.lam)

    @property
    def area_bound_holds(self) -> bool:
        return self.covered_area >= self.area_lower_bound - 1e-12


def _pole_points(poles: PoleConfig | Sequence[Point]) -> tuple[Point, ...]:
    return poles.points if isinstance(poles, PoleConfig) else tuple((float(x), float(y)) for x, y in poles)


def tile_squares(spec: DomainSpec, poles: PoleConfig | Sequence[Point], lam: float, t: float) -> TilingReport:
    """Pack ``Ω`` with squares of side ``t/√λ``, discarding those leaving ``Ω`` or containing a pole in their closure.

    The 16 lattice offsets ``{0, 1/4, 1/2, 3/4}²`` (in units of the side) are tried and the one keeping most squares wins.
    Raise ``SideTooLarge`` if the side exceeds the diameter of ``Ω``.
    """
    if not lam > 0:
        raise ConfigError(f"Spectral parameter λ should be > 0.\n"
                          + f"It was {lam}")
    if not t >= 1:
        raise ConfigError(f"Tiling parameter t should be >= 1.\n"
                          + f"It was {t}")
    side: float = t / math.sqrt(lam)
    if side > spec.diameter:
        raise SideTooLarge(f"Square side t/sqrt(λ) = {side:.6g} exceeds the diameter {spec.diameter:.6g} of {spec.identifier}")
    points: tuple[Point, ...] = _pole_points(poles)
    xmin, ymin, xmax, ymax = spec.bounding_box()

    best: TilingReport | None = None
    for offset_y in TILING_OFFSETS:
        for offset_x in TILING_OFFSETS:
            x_starts: np.ndarray = xmin - offset_x * side + side * np.arange(int(math.ceil((xmax - xmin) / side + offset_x)) + 1)
            y_starts: np.ndarray = ymin - offset_y * side + side * np.arange(int(math.ceil((ymax - ymin) / side + offset_y)) + 1)
            kept: list[Point] = []
            excluded: int = 0
            for y0 in y_starts:
                for x0 in x_starts:
                    if not spec.square_inside(float(x0), float(y0), side):
                        continue
                    if any(x0 - POLE_TOLERANCE <= px <= x0 + side + POLE_TOLERANCE and
                           y0 - POLE_TOLERANCE <= py <= y0 + side + POLE_TOLERANCE for px, py in points):
                        excluded += 1
                        continue
                    kept.append((float(x0), float(y0)))
            if best is None or len(kept) > best.kept:
                best = TilingReport(lam, t, side, (offset_x, offset_y), tuple(kept), excluded, spec.area, len(points))
    logger.debug("tiling of %s with side %.4g: %d squares, %d excluded by poles", spec.identifier, side, best.kept, best.excluded_by_pole)
    return best

@dataclass(frozen=True)
class SuperadditivityReport:
    """``Σ_p n(λ, Q_p) <= n(λ, Ω) + slack``, with ``n(λ, Q_p) = n(t)`` for every square."""
    lam: float
    h: float
    per_square: int
    squares: int
    domain_count: int
    slack: int

    @property
    def tiled_sum(self) -> int:
        return self.per_square * self.squares

    @property
    def holds(self) -> bool:
        return self.tiled_sum <= self.domain_count + self.slack


def discrete_operator(spec: DomainSpec, pole_points: Sequence[Point], h: float) -> tuple[Grid, PoleConfig, SparseOperator]:
    """Grid, snapped poles and Aharonov-Bohm operator with default cuts."""
    grid: Grid = build_grid(spec, h)
    poles: PoleConfig = snap_poles(grid, pole_points)
    return grid, poles, assemble_ab(grid, poles, default_cuts(grid, poles))


def check_superadditivity(spec: DomainSpec, poles: PoleConfig | Sequence[Point], lam: float, tiling: TilingReport,
                          h: float, operator: SparseOperator | None = None) -> SuperadditivityReport:
    """Compare the exact counts of the tiling squares with the discrete count of ``Ω``.

    The slack is the number of discrete eigenvalues in ``[λ, λ(1 + δ))`` with ``δ = λh²/12 + h·P/(2A)``,
    the stencil error plus the boundary layer of the grid.
    """
    if operator is None:
        operator = discrete_operator(spec, _pole_points(poles), h)[2]
    per_square: int = n_square_exact(tiling.t)
    domain_count: int = count_below_perturbed(operator, lam)
    relative_error: float = lam * h * h / 12 + h * spec.perimeter / (2 * spec.area)
    slack: int = count_below_perturbed(operator, lam * (1 + relative_error)) - domain_count
    report: SuperadditivityReport = SuperadditivityReport(lam, h, per_square, tiling.kept, domain_count, slack)
    logger.info("superadditivity at λ=%.6g: %d squares × n(t)=%d = %d, n(λ, Ω)=%d (slack %d)",
                lam, tiling.kept, per_square, report.tiled_sum, domain_count, slack)
    return report

@dataclass(frozen=True)
class BoundReport:
    """Every quantity of the finite-k counting argument; the verdicts are recomputed from the raw fields."""
    k: int
    L_k: float
    ell: int
    t: float
    eps: float
    area: float
    boundary_deficit: float
    t_source: str
    bound: str
    rhs: float
    alpha_threshold: float
    c0: float
    faber_krahn: FaberKrahnCheck
    tiling: TilingReport | None = None
    superadditivity: SuperadditivityReport | None = None

    @property
    def alpha(self) -> float:
        return self.ell / self.k

    @property
    def rhs_over_k(self) -> float:
        return self.rhs / self.k

    @property
    def contradiction(self) -> bool:
        """``True`` when the right-hand side exceeds ``k``: the assumed ``(𝔏_k, ℓ)`` cannot occur."""
        return self.rhs > self.k

    @property
    def certified_nu_lower_bound(self) -> float:
        return min(float(self.ell), self.c0 * self.k)

    @property
    def nu_lower_bound_holds(self) -> bool:
        return self.ell >= self.c0 * self.k

    def to_summary(self) -> dict[str, Any]:
        """Raw fields plus the recomputed verdicts; tiling squares are left out."""
        summary: dict[str, Any] = {name: value for name, value in asdict(self).items() if name not in ("tiling", "superadditivity")}
        summary["verdicts"] = {
            "alpha": self.alpha,
            "rhs_over_k": self.rhs_over_k,
            "contradiction": self.contradiction,
            "certified_nu_lower_bound": self.certified_nu_lower_bound,
            "nu_lower_bound_holds": self.nu_lower_bound_holds
        }
        if self.tiling is not None:
            summary["tiling"] = {
                "lam": self.tiling.lam,
                "t": self.tiling.t,
                "side": self.tiling.side,
                "offset": list(self.tiling.offset),
                "kept": self.tiling.kept,
                "excluded_by_pole": self.tiling.excluded_by_pole,
                "covered_area": self.tiling.covered_area,
                "excluded_by_boundary_area": self.tiling.excluded_by_boundary_area,
                "boundary_constant": self.tiling.boundary_constant,
                "area_bound_holds": self.tiling.area_bound_holds
            }
        if self.superadditivity is not None:
            summary["superadditivity"] = {
                "per_square": self.superadditivity.per_square,
                "squares": self.superadditivity.squares,
                "tiled_sum": self.superadditivity.tiled_sum,
                "domain_count": self.superadditivity.domain_count,
                "slack": self.superadditivity.slack,
                "holds": self.superadditivity.holds
            }
        return summary


def z1_rhs(L_k: float, ell: float, t: float, eps: float, area: float, boundary_deficit: float = 0.0) -> float:
    return (1 - eps) * t * t / (4 * math.pi) * (area - ell * t * t / L_k - boundary_deficit) * L_k / (t * t)


def evaluate_z1(k: int, L_k: float, ell: int, t: float, eps: float, area: float, boundary_deficit: float = 0.0,
                t_source: str = "analytic", bound: CountingBound | None = None) -> BoundReport:
    """Evaluate the counting inequality for ``k`` domains of energy ``L_k`` and ``ℓ`` poles.

    Raise ``InadmissibleEps`` unless ``ε`` lies in ``(0, 1 - 4/j²)``.
    """
    bound = bound or PrintedCountingBound()
    check_eps(eps, error=InadmissibleEps)
    if not (k >= 1 and L_k > 0 and ell >= 0 and area > 0 and t > 0):
        raise ConfigError(f"Needs k >= 1, L_k > 0, ell >= 0, area > 0 and t > 0.\n"
                          + f"It was k={k}, L_k={L_k}, ell={ell}, area={area}, t={t}")
    threshold: float = bound.t_of_eps(eps)
    if t_source == "analytic" and t < threshold * (1 - 1e-12):
        logger.warning("t=%.6g is below the analytic t(ε)=%.6g of the %s bound", t, threshold, bound.name)
    return BoundReport(
        k=k,
        L_k=L_k,
        ell=ell,
        t=t,
        eps=eps,
        area=area,
        boundary_deficit=boundary_deficit,
        t_source=t_source,
        bound=bound.name,
        rhs=z1_rhs(L_k, ell, t, eps, area, boundary_deficit),
        alpha_threshold=alpha_threshold(eps, t),
        c0=c0_of_eps(eps, bound),
        faber_krahn=faber_krahn_lhs(area, L_k, k)
    )

@dataclass(frozen=True)
class NuLowerBound:
    """``c₀·k`` under both counting bounds, and the conjectured ``2k``."""
    k: int
    paper: float
    corrected: float
    conjectured: int

    @property
    def paper_ceiling(self) -> int:
        return math.ceil(self.paper)

    @property
    def corrected_ceiling(self) -> int:
        return math.ceil(self.corrected)

    @property
    def paper_vacuous(self) -> bool:
        return self.paper < 1

    @property
    def corrected_vacuous(self) -> bool:
        return self.corrected < 1


def nu_lower_bound(k: int) -> NuLowerBound:
    if k < 1:
        raise ConfigError(f"k should be >= 1.\n"
                          + f"It was {k}")
    eps: float = eps_max()
    return NuLowerBound(k, c0_of_eps(eps, PrintedCountingBound()) * k, c0_of_eps(eps, CorrectedCountingBound()) * k, 2 * k)


def certify(spec: DomainSpec, k: int, pole_points: Sequence[Point], h: float, L_k: float | None = None,
            eps: float | None = None, t: float | None = None, bound: CountingBound | None = None,
            tol: float = 1e-9, seed: int = 42) -> BoundReport:
    """Run tiling, superadditivity and the counting inequality on one instance.

    ``L_k`` defaults to the ``k``-th eigenvalue of the Aharonov-Bohm operator with poles ``pole_points``,
    ``ε`` to ``ε_max`` and ``t`` to ``t(ε)`` of ``bound``.
    Raise ``SuperadditivityViolation`` when the tiled count exceeds the domain count beyond the slack.
    """
    bound = bound or PrintedCountingBound()
    grid, poles, operator = discrete_operator(spec, pole_points, h)
    if L_k is None:
        L_k = float(smallest_eigenpairs(operator, k, tol, seed).eigenvalues[k - 1])
    eps = eps_max() if eps is None else eps
    check_eps(eps, error=InadmissibleEps)
    t_source: str = "given" if t is not None else "analytic"
    t = bound.t_of_eps(eps) if t is None else t

    tiling: TilingReport = tile_squares(spec, poles, L_k, t)
    superadditivity: SuperadditivityReport = check_superadditivity(spec, poles, L_k, tiling, h, operator)
    if not superadditivity.holds:
        raise SuperadditivityViolation(f"Tiled count exceeds the domain count on {spec.identifier} at λ={L_k!r}.\n"
                                       + f"Sum was {superadditivity.tiled_sum}, domain count {superadditivity.domain_count}, "
                                       + f"slack {superadditivity.slack}")
    deficit: float = spec.area - len(poles) * t * t / L_k - tiling.covered_area
    report: BoundReport = evaluate_z1(k, L_k, len(poles), t, eps, spec.area, deficit, t_source, bound)
    return replace(report, tiling=tiling, superadditivity=superadditivity)
