from minpart.numerics.partition_analysis import DEFAULT_ZERO_TOL, EigenspaceChoice, k_domain_vector
from minpart.numerics.eigensolver import DEFAULT_SEED, DEFAULT_TOL, Spectrum, smallest_eigenpairs
from minpart.numerics.magnetic_operator import SparseOperator, assemble_ab
from minpart.numerics.geometry import default_cuts, snap_poles
from minpart.data_structs.grid import Grid, PoleConfig
from minpart.data_structs.search import Evaluation
from minpart.data_structs.domain import Point
from minpart.errors import GeometryError

from abc import ABC, abstractmethod
from collections.abc import Sequence
from typing import override
import logging
import math

logger = logging.getLogger(__name__)

type CacheKey = tuple[tuple[tuple[int, int], ...], float]

EIGENSPACE_MARGIN: int = 2

def ab_spectrum(grid: Grid, poles: PoleConfig, m: int, tol: float = DEFAULT_TOL,
                seed: int = DEFAULT_SEED) -> tuple[SparseOperator, Spectrum]:
    """Assemble the AB operator of ``poles`` with the default cuts and return it with its ``m`` smallest eigenpairs."""
    operator: SparseOperator = assemble_ab(grid, poles, default_cuts(grid, poles))
    return operator, smallest_eigenpairs(operator, m, tol, seed)


def lambda_k(grid: Grid, poles: PoleConfig, k: int, tol: float = DEFAULT_TOL, seed: int = DEFAULT_SEED) -> float:
    """Return the ``k``-th eigenvalue of the AB operator of ``poles``."""
    _, spectrum = ab_spectrum(grid, poles, k, tol, seed)
    return float(spectrum.eigenvalues[k - 1])


def k_th_eigenspace(grid: Grid, poles: PoleConfig, k: int, tol: float = DEFAULT_TOL, seed: int = DEFAULT_SEED,
                    zero_tol: float = DEFAULT_ZERO_TOL) -> tuple[SparseOperator, Spectrum, EigenspaceChoice]:
    """Solve for ``λ_k`` and the next eigenvalues, then pick a vector of its eigenspace with ``k`` nodal domains if one is found."""
    operator, spectrum = ab_spectrum(grid, poles, min(k + EIGENSPACE_MARGIN, grid.size), tol, seed)
    return operator, spectrum, k_domain_vector(spectrum, operator.gauge, grid, k, zero_tol, seed)


def assess_configuration(grid: Grid, poles: PoleConfig, k: int, tol: float = DEFAULT_TOL, seed: int = DEFAULT_SEED,
                         zero_tol: float = DEFAULT_ZERO_TOL) -> Evaluation:
    """Return ``λ_k`` of ``poles`` with the number of nodal domains found in its eigenspace."""
    _, spectrum, choice = k_th_eigenspace(grid, poles, k, tol, seed, zero_tol)
    return Evaluation(float(spectrum.eigenvalues[k - 1]), choice.domains)


class ObjectiveFunction(ABC):
    """Interface for the functions of the pole positions maximized by the pole search.

    Invalid configurations score ``-inf``.
    """

    @abstractmethod
    def __call__(self, points: Sequence[Point]) -> float:
        ...

class LambdaKObjective(ObjectiveFunction):
    """``λ_k`` of the AB operator as a function of the pole positions.

    Positions are snapped to plaquette centers and the evaluations are cached by ``(snapped poles, h)``,
    so only cache misses cost an eigensolve. Each evaluation also carries the number of nodal domains of the best
    vector of the eigenspace of ``λ_k``, which the search uses to tell feasible configurations apart.
    Poles outside the fully interior plaquettes, or two poles in one plaquette, score ``-inf`` without
    being counted as evaluations.
    """

    def __init__(self, grid: Grid, k: int, tol: float = DEFAULT_TOL, seed: int = DEFAULT_SEED,
                 zero_tol: float = DEFAULT_ZERO_TOL) -> None:
        if k < 1 or k > grid.size:
            raise ValueError(f"Eigenvalue index should be between 1 and the grid size.\n"
                             + f"It was {k}, grid size {grid.size}")
        self.__grid: Grid = grid
        self.__k: int = k
        self.__tol: float = tol
        self.__seed: int = seed
        self.__zero_tol: float = zero_tol
        self.__cache: dict[CacheKey, Evaluation] = {}
        self.__hits: int = 0
        self.__misses: int = 0

    @property
    def grid(self) -> Grid:
        return self.__grid

    @property
    def k(self) -> int:
        return self.__k

    @property
    def tol(self) -> float:
        return self.__tol

    @property
    def seed(self) -> int:
        return self.__seed

    @property
    def zero_tol(self) -> float:
        return self.__zero_tol

    @property
    def hits(self) -> int:
        return self.__hits

    @property
    def misses(self) -> int:
        """Number of eigensolves done so far."""
        return self.__misses

    def snap(self, points: Sequence[Point]) -> PoleConfig | None:
        """Return the snapped configuration, ``None`` if it is not valid on the grid."""
        try:
            return snap_poles(self.__grid, points)
        except GeometryError:
            return None

    def key(self, poles: PoleConfig) -> CacheKey:
        return poles.key, self.__grid.h

    def cached(self, poles: PoleConfig) -> Evaluation | None:
        """Return the cached evaluation of ``poles``, counting a hit, or ``None``."""
        evaluation: Evaluation | None = self.__cache.get(self.key(poles))
        if evaluation is not None:
            self.__hits += 1
        return evaluation

    def store(self, poles: PoleConfig, evaluation: Evaluation) -> None:
        """Record an evaluation computed elsewhere (e.g. by a worker process) as one eigensolve."""
        self.__cache[self.key(poles)] = evaluation
        self.__misses += 1

    def assess(self, poles: PoleConfig) -> Evaluation:
        evaluation: Evaluation | None = self.cached(poles)
        if evaluation is None:
            evaluation = assess_configuration(self.__grid, poles, self.__k, self.__tol, self.__seed, self.__zero_tol)
            self.store(poles, evaluation)
            logger.debug("λ_%d = %.10g with %d nodal domains at %s", self.__k, evaluation.value, evaluation.domains,
                         poles.points)
        return evaluation

    def evaluate(self, poles: PoleConfig) -> float:
        return self.assess(poles).value

    @override
    def __call__(self, points: Sequence[Point]) -> float:
        poles: PoleConfig | None = self.snap(points)
        if poles is None:
            return -math.inf
        return self.evaluate(poles)
