"""Low spectrum and exact eigenvalue counts of the assembled operators."""
from minpart.errors import DimensionTooSmall, FactorizationBreakdown, NoConvergence
from minpart.numerics.magnetic_operator import SparseOperator, assemble_ab
from minpart.numerics.geometry import build_grid, default_cuts, snap_poles
from minpart.data_structs.domain import DomainSpec, Point
from minpart.data_structs.grid import Grid, read_only

from scipy.sparse.linalg import ArpackNoConvergence, LinearOperator, eigsh, splu
from scipy.sparse import csc_matrix, identity
import scipy.linalg

from collections.abc import Sequence
from dataclasses import dataclass
import numpy as np
import logging

logger = logging.getLogger(__name__)

DEFAULT_TOL: float = 1e-9
DEFAULT_SEED: int = 42
CLUSTER_TOLERANCE: float = 1e-8
DENSE_LIMIT: int = 400
DENSE_INERTIA_LIMIT: int = 256
DENSE_FALLBACK_LIMIT: int = 2500
PIVOT_TOLERANCE: float = 1e-13
PERTURBATION: float = 1e-10

@dataclass(frozen=True, eq=False)
class Spectrum:
    """The ``m`` smallest eigenpairs of an operator.

    ``eigenvectors[:, k]`` belongs to ``eigenvalues[k]`` and satisfies ``Σ u_i² h² = 1``;
    its largest component in absolute value (first one on ties) is positive.
    ``residuals[k]`` is ``‖Au - λu‖ / ‖A‖_∞`` for the unit vector ``u``.
    Inside a cluster of eigenvalues closer than ``1e-8`` relative, the basis depends on ``seed`` only.
    """
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    residuals: np.ndarray
    iterations: int
    method: str
    h: float

    def __len__(self) -> int:
        return len(self.eigenvalues)

    def vector(self, index: int) -> np.ndarray:
        """Return the eigenvector of the ``index``-th eigenvalue, counted from 1."""
        return self.eigenvectors[:, index - 1]


def smallest_eigenpairs(op: SparseOperator, m: int, tol: float = DEFAULT_TOL, seed: int = DEFAULT_SEED) -> Spectrum:
    """Return the ``m`` smallest eigenpairs of ``op``.

    Small operators are solved densely, larger ones by shift-invert Lanczos around 0 on a sparse LU factorization.
    Raise ``DimensionTooSmall`` unless ``1 <= m <= N``, ``NoConvergence`` if a residual exceeds ``tol·‖A‖_∞``.
    """
    n: int = op.dimension
    if not (1 <= m <= n):
        raise DimensionTooSmall(f"Number of eigenpairs should be in [1, {n}].\n"
                                + f"It was {m}")
    if not tol > 0:
        raise ValueError(f"Tolerance should be > 0.\n"
                         + f"It was {tol}")

    matrix: csc_matrix = op.matrix.tocsc()
    eigenvalues: np.ndarray
    vectors: np.ndarray
    iterations: int
    method: str
    if n <= DENSE_LIMIT or m >= n - 1:
        eigenvalues, vectors = scipy.linalg.eigh(matrix.toarray(), subset_by_index=[0, m - 1])
        iterations, method = 1, "dense"
    else:
        eigenvalues, vectors, iterations = _shift_invert(matrix, m, seed)
        method = "shift-invert-lanczos"

    order: np.ndarray = np.argsort(eigenvalues, kind="stable")
    eigenvalues = eigenvalues[order]
    vectors = vectors[:, order]
    vectors = _orthonormalize_clusters(eigenvalues, vectors)
    vectors = _fix_signs(vectors)

    norm: float = float(abs(matrix).sum(axis=1).max())
    residuals: np.ndarray = np.linalg.norm(matrix @ vectors - vectors * eigenvalues, axis=0) / norm
    worst: float = float(residuals.max())
    if worst > tol:
        raise NoConvergence(iterations, worst, f"Requested relative tolerance was {tol:.1e}")
    logger.debug("%s solve of dimension %d: %d eigenpairs, worst residual %.2e", method, n, m, worst)

    return Spectrum(
        eigenvalues=read_only(eigenvalues),
        eigenvectors=read_only(vectors / op.h),
        residuals=read_only(residuals),
        iterations=iterations,
        method=method,
        h=op.h
    )


def _shift_invert(matrix: csc_matrix, m: int, seed: int) -> tuple[np.ndarray, np.ndarray, int]:
    n: int = matrix.shape[0]
    factorization = splu(matrix)
    applications: list[int] = [0]

    def solve(x: np.ndarray) -> np.ndarray:
        applications[0] += 1
        return factorization.solve(np.asarray(x, dtype=float))

    inverse: LinearOperator = LinearOperator((n, n), matvec=solve, dtype=float)
    start: np.ndarray = np.random.default_rng(seed).standard_normal(n)
    try:
        eigenvalues, vectors = eigsh(matrix, k=m, sigma=0.0, which="LM", OPinv=inverse, v0=start, tol=0)
    except ArpackNoConvergence as error:
        best: float = float("inf")
        if len(error.eigenvalues) > 0:
            best = float(np.linalg.norm(matrix @ error.eigenvectors - error.eigenvectors * error.eigenvalues, axis=0).max())
        raise NoConvergence(applications[0], best, str(error)) from error
    return eigenvalues, vectors, applications[0]


def _clusters(eigenvalues: np.ndarray) -> list[slice]:
    """Split the ascending ``eigenvalues`` into runs closer than ``CLUSTER_TOLERANCE`` relative."""
    bounds: list[int] = [0]
    for k in range(1, len(eigenvalues)):
        scale: float = max(abs(eigenvalues[k]), abs(eigenvalues[k - 1]), 1.0)
        if eigenvalues[k] - eigenvalues[k - 1] > CLUSTER_TOLERANCE * scale:
            bounds.append(k)
    bounds.append(len(eigenvalues))
    return [slice(bounds[k], bounds[k + 1]) for k in range(len(bounds) - 1)]


def _orthonormalize_clusters(eigenvalues: np.ndarray, vectors: np.ndarray) -> np.ndarray:
    gram: np.ndarray = vectors.T @ vectors
    if np.abs(gram - np.eye(len(gram))).max() <= CLUSTER_TOLERANCE:
        return vectors
    vectors = vectors.copy()
    for cluster in _clusters(eigenvalues):
        q, _ = np.linalg.qr(vectors[:, cluster])
        vectors[:, cluster] = q
    logger.debug("re-orthonormalized %d eigenvectors inside clusters", vectors.shape[1])
    return vectors


def _fix_signs(vectors: np.ndarray) -> np.ndarray:
    pivots: np.ndarray = np.argmax(np.abs(vectors), axis=0)
    signs: np.ndarray = np.sign(vectors[pivots, np.arange(vectors.shape[1])])
    signs[signs == 0] = 1.0
    return vectors * signs


def count_below(op: SparseOperator, lam: float) -> int:
    """Return the exact number of eigenvalues of ``op`` strictly below ``lam``.

    The count is the number of negative pivots of a symmetric ``LDLᵀ`` factorization of ``A - lam·I``.
    Raise ``FactorizationBreakdown`` when a pivot is numerically zero (``lam`` is an eigenvalue up to rounding).
    """
    if not np.isfinite(lam):
        raise ValueError(f"Spectral parameter should be finite.\n"
                         + f"It was {lam}")
    if lam <= 0:
        return 0
    n: int = op.dimension
    shifted: csc_matrix = (op.matrix - lam * identity(n, format="csr")).tocsc()
    scale: float = float(abs(shifted).sum(axis=1).max())
    if n <= DENSE_INERTIA_LIMIT:
        return _dense_inertia(shifted, lam, scale)

    try:
        factorization = splu(shifted, permc_spec="MMD_AT_PLUS_A", diag_pivot_thresh=0.0,
                             options=dict(SymmetricMode=True))
    except RuntimeError as error:
        raise FactorizationBreakdown(lam, str(error)) from error
    if not np.array_equal(factorization.perm_r, factorization.perm_c):
        if n <= DENSE_FALLBACK_LIMIT:
            logger.debug("off-diagonal pivoting at %r, using the dense factorization", lam)
            return _dense_inertia(shifted, lam, scale)
        raise FactorizationBreakdown(lam, "Off-diagonal pivoting broke the symmetric elimination order")
    pivots: np.ndarray = factorization.U.diagonal()
    if np.abs(pivots).min() <= PIVOT_TOLERANCE * scale:
        raise FactorizationBreakdown(lam, f"Smallest pivot was {np.abs(pivots).min():.3e}")
    return int(np.count_nonzero(pivots < 0))


def _dense_inertia(shifted: csc_matrix, lam: float, scale: float) -> int:
    _, blocks, _ = scipy.linalg.ldl(shifted.toarray(), lower=True)
    block_eigenvalues: np.ndarray = np.linalg.eigvalsh(blocks)
    if np.abs(block_eigenvalues).min() <= PIVOT_TOLERANCE * scale:
        raise FactorizationBreakdown(lam, f"Smallest pivot was {np.abs(block_eigenvalues).min():.3e}")
    return int(np.count_nonzero(block_eigenvalues < 0))


def count_below_perturbed(op: SparseOperator, lam: float) -> int:
    """``count_below``, retried at ``lam·(1 - 1e-10)`` after a breakdown."""
    try:
        return count_below(op, lam)
    except FactorizationBreakdown:
        logger.debug("factorization broke down at %r, retrying below it", lam)
        return count_below(op, lam * (1.0 - PERTURBATION))


def richardson(coarse: np.ndarray | float, fine: np.ndarray | float) -> np.ndarray | float:
    """Two-grid extrapolation of an ``O(h²)`` quantity computed at ``h`` (coarse) and ``h/2`` (fine)."""
    return (4.0 * np.asarray(fine) - np.asarray(coarse)) / 3.0

@dataclass(frozen=True, eq=False)
class RichardsonEstimate:
    """Eigenvalues at ``h`` and ``h/2`` and their extrapolation."""
    h: float
    coarse: np.ndarray
    fine: np.ndarray
    extrapolated: np.ndarray


def richardson_spectrum(spec: DomainSpec, m: int, h: float, pole_points: Sequence[Point] = (),
                        tol: float = DEFAULT_TOL, seed: int = DEFAULT_SEED) -> RichardsonEstimate:
    """Return the ``m`` smallest eigenvalues on ``spec`` at ``h`` and ``h/2``, extrapolated.

    Poles are snapped separately on each grid and receive the default cuts.
    """
    levels: list[np.ndarray] = []
    for spacing in (h, h / 2):
        grid: Grid = build_grid(spec, spacing)
        poles = snap_poles(grid, pole_points)
        levels.append(smallest_eigenpairs(assemble_ab(grid, poles, default_cuts(grid, poles)), m, tol, seed).eigenvalues)
    coarse, fine = levels
    return RichardsonEstimate(h, coarse, fine, read_only(np.asarray(richardson(coarse, fine))))
