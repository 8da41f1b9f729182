"""Exact counting function of the Dirichlet unit square and the universal lower bounds on it.

The spectrum of the unit square is ``π²(m² + n²)`` with ``m, n >= 1``; ``n(t)`` counts the eigenvalues strictly below ``t²``.
"""
from minpart.functors.counting_bound import CorrectedCountingBound, CountingBound, PrintedCountingBound
from minpart.errors import ThresholdNotFound

from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from typing import Any
import numpy as np
import logging
import math

logger = logging.getLogger(__name__)

PI_SQUARED: float = math.pi * math.pi
CSV_COLUMNS: tuple[str, ...] = ("t", "n_exact", "bound_paper", "ok_paper", "bound_corrected", "ok_corrected")

def n_square_exact(t: float) -> int:
    """Return ``#{(m, n) : m, n >= 1, π²(m² + n²) < t²}``."""
    if t < 0 or not math.isfinite(t):
        raise ValueError(f"Spectral parameter should be finite and >= 0.\n"
                         + f"It was {t}")
    m_max: int = int(t / math.pi) + 1
    m: np.ndarray = np.arange(1, m_max + 1, dtype=np.int64)
    target: float = t * t
    estimate: np.ndarray = np.floor(np.sqrt(np.maximum(target / PI_SQUARED - m * m, 0.0))).astype(np.int64)
    # the floating estimate may be off by one on either side of the strict comparison
    estimate -= (estimate > 0) & (PI_SQUARED * (m * m + estimate * estimate) >= target)
    estimate += PI_SQUARED * (m * m + (estimate + 1) * (estimate + 1)) < target
    return int(np.maximum(estimate, 0).sum())


def square_eigenvalues_below(t_max: float) -> np.ndarray:
    """Return the sorted eigenvalues of the unit square smaller than ``t_max²``, with multiplicity."""
    m_max: int = int(t_max / math.pi) + 1
    m, n = np.meshgrid(np.arange(1, m_max + 1, dtype=np.int64), np.arange(1, m_max + 1, dtype=np.int64))
    values: np.ndarray = PI_SQUARED * (m * m + n * n).ravel()
    return np.sort(values[values < t_max * t_max])


def n_square_counts(ts: Sequence[float] | np.ndarray) -> np.ndarray:
    """Vectorized ``n_square_exact``."""
    ts = np.asarray(ts, dtype=float)
    if ts.size == 0:
        return np.zeros(0, dtype=np.int64)
    eigenvalues: np.ndarray = square_eigenvalues_below(float(ts.max()))
    return np.searchsorted(eigenvalues, ts * ts, side="left").astype(np.int64)

@dataclass(frozen=True)
class CountReport:
    """Exact count at ``t`` against the printed and the corrected universal bounds (strict comparisons)."""
    t: float
    n_exact: int
    bound_paper: float
    bound_corrected: float

    @property
    def satisfied_paper(self) -> bool:
        return self.n_exact > self.bound_paper

    @property
    def satisfied_corrected(self) -> bool:
        return self.n_exact > self.bound_corrected

    def row(self) -> tuple[Any, ...]:
        """Return the CSV row, in the order of ``CSV_COLUMNS``."""
        return (self.t, self.n_exact, self.bound_paper, self.satisfied_paper, self.bound_corrected, self.satisfied_corrected)


def check_universal_bound(t_grid: Iterable[float]) -> list[CountReport]:
    """Return one ``CountReport`` per ``t`` of ``t_grid``; every ``t`` should be >= 2."""
    ts: np.ndarray = np.asarray(list(t_grid), dtype=float)
    if ts.size > 0 and ts.min() < 2:
        raise ValueError(f"Universal bounds are stated for t >= 2.\n"
                         + f"Smallest t was {ts.min()}")
    printed: CountingBound = PrintedCountingBound()
    corrected: CountingBound = CorrectedCountingBound()
    counts: np.ndarray = n_square_counts(ts)
    reports: list[CountReport] = [CountReport(float(t), int(n), float(printed(t)), float(corrected(t))) for t, n in zip(ts, counts)]
    violated: dict[str, list[float]] = violating_t(reports)
    logger.info("scanned %d values of t: %d violations of the printed bound, %d of the corrected one",
                len(reports), len(violated["paper"]), len(violated["corrected"]))
    return reports


def violating_t(reports: Iterable[CountReport]) -> dict[str, list[float]]:
    """Return the values of ``t`` violating each bound, keyed ``"paper"`` and ``"corrected"``."""
    reports = list(reports)
    return {
        "paper": [report.t for report in reports if not report.satisfied_paper],
        "corrected": [report.t for report in reports if not report.satisfied_corrected]
    }


def violation_summary(reports: Iterable[CountReport]) -> dict[str, Any]:
    """Per bound: number of violating rows and the smallest and largest violating ``t``."""
    reports = list(reports)
    summary: dict[str, Any] = {"rows": len(reports)}
    for name, ts in violating_t(reports).items():
        summary[name] = {
            "violations": len(ts),
            "first": min(ts) if ts else None,
            "last": max(ts) if ts else None
        }
    return summary


def t_grid(t_min: float, t_max: float, step: float) -> np.ndarray:
    """Return ``t_min, t_min + step, …`` up to ``t_max`` included, rounded to 10 decimals."""
    if not (step > 0 and t_max >= t_min):
        raise ValueError(f"Scan needs step > 0 and t_max >= t_min.\n"
                         + f"It was t_min={t_min}, t_max={t_max}, step={step}")
    count: int = int(math.floor((t_max - t_min) / step + 1e-9)) + 1
    return np.round(t_min + step * np.arange(count), 10)


def check_wq(eps: float, t: float) -> bool:
    """Return whether ``n(t) >= (1 - ε)·t²/(4π)``."""
    if not (0 < eps < 1 and t > 0):
        raise ValueError(f"Needs ε in (0, 1) and t > 0.\n"
                         + f"It was ε={eps}, t={t}")
    return n_square_exact(t) >= (1 - eps) * t * t / (4 * math.pi)

@dataclass(frozen=True)
class WqThreshold:
    """Smallest grid ``t`` from which ``check_wq`` holds up to ``t_max``, next to the analytic choices of ``t(ε)``."""
    eps: float
    t_max: float
    step: float
    empirical: float
    analytic_paper: float
    analytic_corrected: float
    sharp_paper: float
    sharp_corrected: float


def min_t_for_wq(eps: float, t_max: float = 100.0, step: float = 0.01) -> WqThreshold:
    """Return the smallest ``t`` on the grid ``step·ℕ`` such that ``check_wq(ε, t')`` holds for every grid ``t'`` in ``[t, t_max]``.

    Raise ``ThresholdNotFound`` if it fails at ``t_max`` itself.
    """
    if not 0 < eps < 1:
        raise ValueError(f"ε should be in (0, 1).\n"
                         + f"It was {eps}")
    ts: np.ndarray = t_grid(step, t_max, step)
    holds: np.ndarray = n_square_counts(ts) >= (1 - eps) * ts * ts / (4 * math.pi)
    if ts.size == 0 or not holds[-1]:
        raise ThresholdNotFound(f"No t <= {t_max} satisfies the counting inequality for ε = {eps}")
    failing: np.ndarray = np.flatnonzero(~holds)
    empirical: float = float(ts[failing[-1] + 1]) if failing.size > 0 else float(ts[0])
    printed: CountingBound = PrintedCountingBound()
    corrected: CountingBound = CorrectedCountingBound()
    return WqThreshold(
        eps=eps,
        t_max=t_max,
        step=step,
        empirical=empirical,
        analytic_paper=printed.t_of_eps(eps),
        analytic_corrected=corrected.t_of_eps(eps),
        sharp_paper=printed.sharp_t_of_eps(eps),
        sharp_corrected=corrected.sharp_t_of_eps(eps)
    )
