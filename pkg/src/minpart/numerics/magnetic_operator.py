"""Dirichlet Laplacian and Aharonov-Bohm operators on a grid.

Flux π at a pole is realized by flipping the sign of the edges crossed by its cut: the operator stays
real symmetric and its eigenvectors are the K_X-real eigenfunctions written in the cut gauge.
"""
from minpart.data_structs.grid import CutSet, Grid, PoleConfig, read_only
from minpart.errors import DifferentStructure, InconsistentCuts
from minpart.views.report_writer import write_text_atomic

from scipy.sparse.csgraph import breadth_first_order, connected_components
from scipy.sparse import coo_matrix, csr_matrix, diags

from dataclasses import dataclass, field
from pathlib import Path
import numpy as np
import logging

logger = logging.getLogger(__name__)

@dataclass(frozen=True, eq=False)
class GaugeField:
    """Edge signs ``σ``: ``sigma[e] = -1`` iff an odd number of cuts cross the edge ``e``."""
    sigma: np.ndarray
    cuts: CutSet = field(default_factory=CutSet)

    @classmethod
    def trivial(cls, grid: Grid) -> "GaugeField":
        return cls(read_only(np.ones(grid.n_edges, dtype=np.int8)))

    @classmethod
    def from_cuts(cls, grid: Grid, cuts: CutSet) -> "GaugeField":
        counts: np.ndarray = cuts.crossing_counts(grid.n_edges)
        sigma: np.ndarray = np.where(counts % 2 == 1, -1, 1).astype(np.int8)
        return cls(read_only(sigma), cuts)

    def plaquette_products(self, grid: Grid) -> np.ndarray:
        """Return the product of the 4 edge signs of every full plaquette, ``0`` elsewhere, indexed ``[j, i]``."""
        full: np.ndarray = grid.full_plaquettes
        products: np.ndarray = np.zeros(full.shape, dtype=np.int8)
        j, i = np.nonzero(full)
        signs: np.ndarray = (self.sigma[grid.h_edge_id[j, i]] * self.sigma[grid.h_edge_id[j + 1, i]] *
                             self.sigma[grid.v_edge_id[j, i]] * self.sigma[grid.v_edge_id[j, i + 1]])
        products[j, i] = signs
        return products

@dataclass(frozen=True, eq=False)
class SparseOperator:
    """A discrete operator: symmetric ``csr_matrix`` plus metadata.

    Diagonal entries are ``4/h²``, the entry of the edge ``(i, j)`` is ``-σ_ij/h²``.
    """
    matrix: csr_matrix
    h: float
    n_poles: int
    domain_id: str
    gauge: GaugeField

    @property
    def dimension(self) -> int:
        return self.matrix.shape[0]

    def write_coo(self, file_path: str | Path) -> None:
        """Write the matrix in ``file_path`` as sorted ``row col value`` lines, 0-based."""
        coo: coo_matrix = self.matrix.tocoo()
        order: np.ndarray = np.lexsort((coo.col, coo.row))
        lines: list[str] = [f"{int(coo.row[k])} {int(coo.col[k])} {float(coo.data[k])!r}" for k in order]
        write_text_atomic(file_path, "\n".join(lines) + "\n")

@dataclass(frozen=True)
class GaugeVerdict:
    """Outcome of ``gauge_equivalent``.

    ``witness`` is the diagonal of ``S`` with ``S·A·S = B`` when ``equivalent``, ``None`` otherwise.
    """
    equivalent: bool
    witness: np.ndarray | None = None


def assemble_laplacian(grid: Grid) -> SparseOperator:
    """Return the 5-point Dirichlet Laplacian of ``grid``."""
    gauge: GaugeField = GaugeField.trivial(grid)
    return SparseOperator(_assemble(grid, gauge.sigma), grid.h, 0, grid.spec.identifier, gauge)


def assemble_ab(grid: Grid, poles: PoleConfig, cuts: CutSet) -> SparseOperator:
    """Return the K_X-real Aharonov-Bohm operator with flux π at every pole.

    Raise ``InconsistentCuts`` unless the sign product around a full plaquette is ``-1`` exactly at the poles.
    """
    if len(cuts) != len(poles):
        raise InconsistentCuts(f"One cut per pole is needed.\n"
                               + f"Got {len(cuts)} cuts for {len(poles)} poles")
    gauge: GaugeField = GaugeField.from_cuts(grid, cuts)
    check_flux(grid, gauge, poles)
    return SparseOperator(_assemble(grid, gauge.sigma), grid.h, len(poles), grid.spec.identifier, gauge)


def check_flux(grid: Grid, gauge: GaugeField, poles: PoleConfig) -> None:
    """Raise ``InconsistentCuts`` if ``gauge`` does not carry flux π exactly at the pole plaquettes."""
    expected: np.ndarray = np.where(grid.full_plaquettes, 1, 0).astype(np.int8)
    for i, j in poles.plaquettes:
        expected[j, i] = -expected[j, i]
    products: np.ndarray = gauge.plaquette_products(grid)
    wrong: np.ndarray = np.argwhere(products != expected)
    if len(wrong) > 0:
        j, i = wrong[0]
        raise InconsistentCuts(f"Plaquette flux does not match the poles at {len(wrong)} plaquettes.\n"
                               + f"First one is ({i}, {j}) with sign product {products[j, i]}")


def _assemble(grid: Grid, sigma: np.ndarray) -> csr_matrix:
    inverse_h2: float = 1.0 / (grid.h * grid.h)
    off_diagonal: np.ndarray = -sigma.astype(float) * inverse_h2
    diagonal: np.ndarray = np.arange(grid.size)
    rows: np.ndarray = np.concatenate([grid.edges[:, 0], grid.edges[:, 1], diagonal])
    cols: np.ndarray = np.concatenate([grid.edges[:, 1], grid.edges[:, 0], diagonal])
    data: np.ndarray = np.concatenate([off_diagonal, off_diagonal, np.full(grid.size, 4.0 * inverse_h2)])
    matrix: csr_matrix = coo_matrix((data, (rows, cols)), shape=(grid.size, grid.size)).tocsr()
    matrix.sort_indices()
    return matrix


def gauge_equivalent(op_a: SparseOperator, op_b: SparseOperator) -> GaugeVerdict:
    """Decide whether a diagonal ±1 matrix ``S`` maps ``op_a`` to ``op_b`` (``S·A·S = B``).

    The candidate is built by propagating signs along a breadth first spanning tree of every connected component,
    then checked entrywise.
    Raise ``DifferentStructure`` if the sparsity patterns differ.
    """
    a: csr_matrix = op_a.matrix.tocsr(copy=True)
    b: csr_matrix = op_b.matrix.tocsr(copy=True)
    a.sort_indices()
    b.sort_indices()
    if a.shape != b.shape or not (np.array_equal(a.indptr, b.indptr) and np.array_equal(a.indices, b.indices)):
        raise DifferentStructure(f"Operators do not share the same sparsity pattern.\n"
                                 + f"Shapes were {a.shape} and {b.shape}, nonzeros {a.nnz} and {b.nnz}")
    ratio: csr_matrix = csr_matrix((np.sign(a.data) * np.sign(b.data), a.indices, a.indptr), shape=a.shape)
    pattern: csr_matrix = csr_matrix((np.ones_like(a.data), a.indices.copy(), a.indptr.copy()), shape=a.shape)
    pattern.setdiag(0)
    pattern.eliminate_zeros()

    n: int = a.shape[0]
    witness: np.ndarray = np.zeros(n)
    _, labels = connected_components(pattern, directed=False)
    for component in np.unique(labels):
        root: int = int(np.flatnonzero(labels == component)[0])
        order, predecessors = breadth_first_order(pattern, root, directed=False, return_predecessors=True)
        witness[root] = 1.0
        if len(order) == 1:
            continue
        children: np.ndarray = order[1:]
        parents: np.ndarray = predecessors[children]
        tree_signs: np.ndarray = np.asarray(ratio[parents, children]).ravel()
        for child, parent, sign in zip(children, parents, tree_signs):
            witness[child] = witness[parent] * sign

    scaling: csr_matrix = diags(witness)
    transformed: csr_matrix = (scaling @ a @ scaling).tocsr()
    transformed.sort_indices()
    equivalent: bool = (np.array_equal(transformed.indptr, b.indptr) and
                        np.array_equal(transformed.indices, b.indices) and
                        np.array_equal(transformed.data, b.data))
    logger.debug("gauge equivalence check on %d nodes: %s", n, equivalent)
    if not equivalent:
        return GaugeVerdict(False)
    return GaugeVerdict(True, read_only(witness.astype(np.int8)))
