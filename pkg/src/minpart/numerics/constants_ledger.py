"""Explicit constants of the linear lower bound ``ν_k >= c₀·k``.

Every function taking ``j_squared`` uses the Faber-Krahn constant ``j²`` by default; any other value ``J > 4``
replaces it, and the bound ``bound`` fixes the choice ``t(ε) = 4π·b/ε``.
With ``b`` the linear coefficient of the counting bound,

    c₀(ε) = ε²·J·(1 - 4/(J(1 - ε))) / (16π·b²),    ε ∈ (0, 1 - 4/J)

is maximal at ``ε_max = 1 - 1/J - √(1 + 2J)/J``.
"""
from minpart.functors.counting_bound import CorrectedCountingBound, CountingBound, PrintedCountingBound
from minpart.errors import EpsOutOfRange

from scipy.optimize import brentq, minimize_scalar
from scipy.special import j0, jn_zeros

from dataclasses import dataclass, field
from functools import cache
import logging
import math

logger = logging.getLogger(__name__)

AGREEMENT_TOLERANCE: float = 1e-10

@cache
def bessel_j01() -> float:
    """Return the first positive zero of ``J₀``, bracketed in ``[2, 3]``."""
    root: float = brentq(j0, 2.0, 3.0, xtol=1e-15, rtol=1e-15)
    reference: float = float(jn_zeros(0, 1)[0])
    if abs(root - reference) > 1e-12:
        logger.warning("first zero of J0: root finding gives %r, tabulated zero %r", root, reference)
    return root


def _j_squared(j_squared: float | None) -> float:
    if j_squared is None:
        return bessel_j01() ** 2
    if not j_squared > 4:
        raise ValueError(f"Faber-Krahn type constant should be > 4.\n"
                         + f"It was {j_squared}")
    return j_squared


def interval_end(j_squared: float | None = None) -> float:
    """Return ``1 - 4/J``, the right end of the admissible interval of ``ε``."""
    return 1 - 4 / _j_squared(j_squared)


def check_eps(eps: float, j_squared: float | None = None, error: type[EpsOutOfRange] = EpsOutOfRange) -> None:
    end: float = interval_end(j_squared)
    if not 0 < eps < end:
        raise error(f"ε should be in the open interval (0, {end:.12g}).\n"
                    + f"It was {eps}")

@dataclass(frozen=True)
class FaberKrahnCheck:
    value: float
    constant: float
    satisfied: bool


def faber_krahn_lhs(area: float, L_k: float, k: int) -> FaberKrahnCheck:
    """Return ``A·L_k/k`` and whether it reaches ``πj²`` (equality accepted up to ``1e-12`` relative)."""
    if not (area > 0 and L_k > 0 and k > 0):
        raise ValueError(f"Area, energy and k should be positive.\n"
                         + f"They were {area}, {L_k}, {k}")
    value: float = area * L_k / k
    constant: float = math.pi * bessel_j01() ** 2
    return FaberKrahnCheck(value, constant, value >= constant * (1 - 1e-12))


def alpha_threshold(eps: float, t: float, j_squared: float | None = None) -> float:
    """Return the ``α`` for which the contradiction margin is exactly 1, ``(1 - 4/(J(1 - ε)))·πJ/t²``."""
    J: float = _j_squared(j_squared)
    check_eps(eps, J)
    if not t > 0:
        raise ValueError(f"Spectral parameter should be > 0.\n"
                         + f"It was {t}")
    return (1 - 4 / (J * (1 - eps))) * math.pi * J / (t * t)


def contradiction_lhs(eps: float, alpha: float, t: float, j_squared: float | None = None) -> float:
    """Return ``(J/4)(1 - ε)(1 - α·t²/(πJ))``; a value > 1 contradicts the assumed partition data."""
    J: float = _j_squared(j_squared)
    return J / 4 * (1 - eps) * (1 - alpha * t * t / (math.pi * J))


def c0_of_eps(eps: float, bound: CountingBound | None = None, j_squared: float | None = None) -> float:
    bound = bound or PrintedCountingBound()
    J: float = _j_squared(j_squared)
    check_eps(eps, J)
    b: float = bound.linear_coefficient
    return eps * eps * J * (1 - 4 / (J * (1 - eps))) / (16 * math.pi * b * b)


def solve_zc0(eps: float, bound: CountingBound | None = None, j_squared: float | None = None) -> float:
    """Solve ``contradiction_lhs(ε, α, t(ε)) = 1`` for ``α`` by root finding."""
    bound = bound or PrintedCountingBound()
    J: float = _j_squared(j_squared)
    check_eps(eps, J)
    t: float = bound.t_of_eps(eps)
    return brentq(lambda alpha: contradiction_lhs(eps, alpha, t, J) - 1, 0.0, math.pi * J / (t * t),
                  xtol=1e-16, rtol=1e-15)


def eps_max(j_squared: float | None = None) -> float:
    """Return ``ε_max``, logging a warning if a golden section search on ``c₀`` disagrees beyond ``1e-6``."""
    J: float = _j_squared(j_squared)
    formula: float = 1 - 1 / J - math.sqrt(1 + 2 * J) / J
    golden: float = eps_max_golden(J)
    if abs(golden - formula) > 1e-6:
        logger.warning("ε_max: closed form %r, golden section search %r", formula, golden)
    return formula


def eps_max_golden(j_squared: float | None = None) -> float:
    """Argmax of ``c₀(ε)`` by golden section search."""
    J: float = _j_squared(j_squared)
    end: float = interval_end(J)
    result = minimize_scalar(lambda eps: -c0_of_eps(eps, j_squared=J), bracket=(0.05 * end, 0.7 * end, 0.99 * end),
                             method="golden", options={"xtol": 1e-11})
    return float(result.x)


def c0_closed_form(j_squared: float | None = None, bound: CountingBound | None = None) -> float:
    """Return ``c₀(ε_max)`` in closed form, ``π³/(64J)·(J² + 10J - 2 - 2(2J + 1)√(1 + 2J))`` for the printed bound."""
    bound = bound or PrintedCountingBound()
    J: float = _j_squared(j_squared)
    printed: float = math.pi ** 3 / (64 * J) * (J * J + 10 * J - 2 - 2 * (2 * J + 1) * math.sqrt(1 + 2 * J))
    b: float = bound.linear_coefficient
    return printed * 4 / (math.pi ** 4 * b * b)

@dataclass(frozen=True)
class PrintedValueCheck:
    """A value printed with few digits, checked with a tolerance of one unit in its last digit."""
    name: str
    printed: float
    tolerance: float
    computed: float

    @property
    def agrees(self) -> bool:
        return abs(self.computed - self.printed) <= self.tolerance * (1 + 1e-9)

@dataclass(frozen=True)
class ConstantLedger:
    """All the constants under one counting bound, with provenance notes."""
    bound: str
    j: float
    j_squared: float
    faber_krahn_constant: float
    interval_end: float
    eps_max: float
    eps_max_golden: float
    t_of_eps_max: float
    sharp_t_of_eps_max: float
    c0_of_eps_max: float
    c0_closed_form: float
    c0_root_finding: float
    printed_checks: tuple[PrintedValueCheck, ...] = ()
    notes: tuple[str, ...] = field(default_factory=tuple)


def build_ledger(bound: CountingBound | None = None, j_squared: float | None = None) -> ConstantLedger:
    """Evaluate every constant under ``bound``, checking the three routes to ``c₀`` against each other."""
    bound = bound or PrintedCountingBound()
    j: float = bessel_j01()
    J: float = _j_squared(j_squared)
    eps: float = eps_max(J)
    c0_route_eps: float = c0_of_eps(eps, bound, J)
    c0_route_closed: float = c0_closed_form(J, bound)
    c0_route_root: float = solve_zc0(eps, bound, J)
    notes: list[str] = [
        "j is the first zero of J0 by root finding on [2, 3]",
        f"t(eps) = max(2, 4*pi*b/eps) with b = {bound.linear_coefficient!r} ({bound.name} counting bound)",
        "eps_max from the closed form, cross-checked by golden section search"
    ]
    if j_squared is not None:
        notes.append(f"Faber-Krahn constant j^2 replaced by {J!r}")
    if abs(c0_route_eps - c0_route_closed) > AGREEMENT_TOLERANCE or abs(c0_route_eps - c0_route_root) > AGREEMENT_TOLERANCE:
        notes.append("the three routes to c0 disagree beyond 1e-10")
        logger.warning("c0 routes disagree: formula %r, closed form %r, root finding %r", c0_route_eps, c0_route_closed, c0_route_root)

    checks: tuple[PrintedValueCheck, ...] = ()
    if j_squared is None:
        checks = (PrintedValueCheck("j", 2.405, 0.001, j), PrintedValueCheck("interval_end", 0.36, 0.01, interval_end(J)))
        if isinstance(bound, PrintedCountingBound):
            checks += (PrintedValueCheck("c0", 0.014, 0.001, c0_route_closed),)
        for check in checks:
            if not check.agrees:
                notes.append(f"{check.name}: printed {check.printed}, computed {check.computed:.12g}")
                logger.warning("%s (%s bound): printed value %s, computed %.12g", check.name, bound.name, check.printed, check.computed)

    return ConstantLedger(
        bound=bound.name,
        j=j,
        j_squared=J,
        faber_krahn_constant=math.pi * J,
        interval_end=interval_end(J),
        eps_max=eps,
        eps_max_golden=eps_max_golden(J),
        t_of_eps_max=bound.t_of_eps(eps),
        sharp_t_of_eps_max=bound.sharp_t_of_eps(eps),
        c0_of_eps_max=c0_route_eps,
        c0_closed_form=c0_route_closed,
        c0_root_finding=c0_route_root,
        printed_checks=checks,
        notes=tuple(notes)
    )


def build_ledgers(j_squared: float | None = None) -> dict[str, ConstantLedger]:
    """Return the ledgers of the printed and of the corrected counting bounds, keyed by bound name."""
    bounds: list[CountingBound] = [PrintedCountingBound(), CorrectedCountingBound()]
    return {bound.name: build_ledger(bound, j_squared) for bound in bounds}
