"""Approximation of minimal k-partitions by maximizing ``λ_k`` of Aharonov-Bohm operators over pole positions.

A minimal k-partition is the nodal partition of a ``k``-th K_X-real eigenfunction whose poles sit at its odd
critical points. The search treats the maximization of ``λ_k`` as a heuristic for locating such configurations;
it reports what it finds and never asserts minimality.
"""
from minpart.numerics.eigensolver import DEFAULT_SEED, DEFAULT_TOL
from minpart.configs.search_configs import SearchConfigs, check_pole_count
from minpart.entities.search_manager import SearchManager
from minpart.functors.objective import LambdaKObjective, lambda_k
from minpart.data_structs.search import SearchData, SearchResult
from minpart.numerics.geometry import build_grid, snap_poles
from minpart.data_structs.domain import DomainSpec, Point
from minpart.data_structs.grid import Grid, PoleConfig

from collections.abc import Callable, Sequence
from dataclasses import dataclass
from functools import cache
import logging

logger = logging.getLogger(__name__)

@cache
def _objective(spec: DomainSpec, k: int, h: float, tol: float, seed: int) -> LambdaKObjective:
    return LambdaKObjective(build_grid(spec, h), k, tol, seed)


def objective_lambda_k(spec: DomainSpec, k: int, poles: Sequence[Point], h: float,
                       tol: float = DEFAULT_TOL, seed: int = DEFAULT_SEED) -> float:
    """Return ``λ_k`` of the AB operator with poles snapped to plaquette centers.

    Values are cached by ``(snapped poles, h)``. Unlike the search objective, invalid poles raise.
    """
    objective: LambdaKObjective = _objective(spec, k, h, tol, seed)
    return objective.evaluate(snap_poles(objective.grid, poles))


def objective_cache_info(spec: DomainSpec, k: int, h: float, tol: float = DEFAULT_TOL,
                         seed: int = DEFAULT_SEED) -> tuple[int, int]:
    """Return the ``(hits, misses)`` of the cache behind ``objective_lambda_k``."""
    objective: LambdaKObjective = _objective(spec, k, h, tol, seed)
    return objective.hits, objective.misses


def search_minimal_partition(spec: DomainSpec, k: int, ell: int, h: float, budget: int, seed: int = DEFAULT_SEED,
                             restarts: int = 4, processes: int = 1, tol: float = DEFAULT_TOL,
                             initial_step: float | None = None,
                             callback: Callable[[SearchData], None] | None = None) -> SearchResult:
    """Search the configuration of ``ℓ`` poles maximizing ``λ_k`` and return it with its nodal partition.

    Raise ``InvalidPoleCount`` unless ``0 <= ℓ <= 2k - 4`` (``ℓ = 0`` is always allowed).
    Warn with ``BudgetExhaustedWithoutImprovement`` if the budget ran out before any move was accepted.
    """
    check_pole_count(k, ell)
    configuration: SearchConfigs = SearchConfigs()
    configuration.domain = spec
    configuration.k = k
    configuration.ell = ell
    configuration.h = h
    configuration.budget = budget
    configuration.seed = seed
    configuration.restarts = restarts
    configuration.processes = processes
    configuration.tol = tol
    if initial_step is not None:
        configuration.initial_step = initial_step
    manager: SearchManager = SearchManager(configuration)
    if callback is not None:
        manager.register_callback(callback)
    return manager.start()

@dataclass(frozen=True)
class PoleInsertion:
    """``λ₁`` without and with one pole."""
    without_pole: float
    with_pole: float

    @property
    def raised(self) -> bool:
        return self.with_pole >= self.without_pole


def pole_insertion_effect(spec: DomainSpec, h: float, point: Point, tol: float = DEFAULT_TOL,
                          seed: int = DEFAULT_SEED) -> PoleInsertion:
    """Compare ``λ₁`` of the Dirichlet Laplacian with ``λ₁`` of the AB operator with one pole at ``point``."""
    grid: Grid = build_grid(spec, h)
    poles: PoleConfig = snap_poles(grid, [point])
    effect: PoleInsertion = PoleInsertion(lambda_k(grid, PoleConfig(), 1, tol, seed), lambda_k(grid, poles, 1, tol, seed))
    if not effect.raised:
        logger.warning("one pole at %s lowered λ₁ from %.10g to %.10g", poles.points[0], effect.without_pole, effect.with_pole)
    return effect
