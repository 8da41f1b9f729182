"""Nodal partitions of real (or K_X-real) grid functions.

Two interior nodes are neighbors in the partition when they are joined by a grid edge ``e`` with
``u_i·u_j·σ_e > 0`` and neither is close to zero. The domains are the connected components of that graph;
nodes with ``|u| <= zero_tol·max|u|`` belong to no domain and are labelled ``BOUNDARY``.

Arities are counted on closed node loops: walking the loop, the value of each node is transported by the product
of the edge signs met so far, and ``ν`` is the number of sign changes of the transported values (nodes labelled
``BOUNDARY`` are skipped). The count is odd exactly when the loop encloses an odd number of poles.
"""
from minpart.numerics.magnetic_operator import GaugeField, SparseOperator
from minpart.numerics.eigensolver import DEFAULT_SEED, Spectrum, richardson_spectrum, smallest_eigenpairs
from minpart.numerics.constants_ledger import FaberKrahnCheck, bessel_j01, faber_krahn_lhs
from minpart.data_structs.grid import Grid, PoleConfig, read_only
from minpart.errors import AllZero, EmptyDomain, GeometryError
from minpart.data_structs.domain import DomainSpec, Point

from scipy.sparse.csgraph import connected_components
from scipy.sparse import coo_matrix, csr_matrix

from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from multiprocessing import Pool
from functools import cache
from typing import Any
import numpy as np
import logging
import math

logger = logging.getLogger(__name__)

BOUNDARY: int = -1
DEFAULT_ZERO_TOL: float = 1e-6
MIN_INTERFACE_FRACTION: float = 1e-2
CLUSTER_RADIUS: float = 1.5
POLE_MATCH_RADIUS: float = 2.0
EIGENSPACE_TOLERANCE: float = 1e-4
EIGENSPACE_SAMPLES: int = 24

@dataclass(frozen=True)
class CriticalPoint:
    """A point of the boundary set where ``ν >= 3`` arcs meet.

    ``kind`` is ``"plaquette"`` (measured on the 4 corners of the plaquette ``index``) or ``"node"``
    (measured on the 8 nodes around the lattice node ``index``).
    """
    location: Point
    arity: int
    kind: str
    index: tuple[int, int]

    @property
    def odd(self) -> bool:
        return self.arity % 2 == 1

@dataclass(frozen=True)
class PoleAssociation:
    """Arity of the partition around a pole and the critical point matched to it (``None`` when unmatched)."""
    plaquette: tuple[int, int]
    point: Point
    arity: int
    critical_point: int | None
    distance: float

    @property
    def odd(self) -> bool:
        return self.arity % 2 == 1

@dataclass(frozen=True, eq=False)
class NodalPartition:
    """A partition ``𝒟 = {D_0, …, D_(k-1)}`` of the grid nodes.

    Labels are numbered by first appearance in node order, so the partition does not depend on the solver's sign choices.
    ``energies[i]`` is ``λ(D_i)`` (empty when energies were not requested).
    """
    labels: np.ndarray
    k: int
    domains: tuple[np.ndarray, ...]
    energies: np.ndarray
    critical_points: tuple[CriticalPoint, ...]
    pole_associations: tuple[PoleAssociation, ...]
    u: np.ndarray
    sigma: np.ndarray
    kept_edges: np.ndarray
    h: float
    eigenvalue: float | None = None

    @property
    def energy(self) -> float:
        """Return ``Λ(𝒟) = max_i λ(D_i)``."""
        if len(self.energies) == 0:
            raise ValueError("Partition energies were not computed")
        return float(self.energies.max())

    @property
    def odd_critical_points(self) -> tuple[CriticalPoint, ...]:
        return tuple(point for point in self.critical_points if point.odd)

    def to_summary(self) -> dict[str, Any]:
        """JSON summary: ``k``, ``Λ``, energies and critical points."""
        return {
            "k": self.k,
            "energy": self.energy if len(self.energies) > 0 else None,
            "energies": self.energies.tolist(),
            "domain_sizes": [len(domain) for domain in self.domains],
            "eigenvalue": self.eigenvalue,
            "critical_points": [{"location": list(point.location), "arity": point.arity, "odd": point.odd, "kind": point.kind}
                                for point in self.critical_points],
            "poles": [{"location": list(pole.point), "arity": pole.arity, "odd": pole.odd,
                       "critical_point": pole.critical_point, "distance": pole.distance}
                      for pole in self.pole_associations]
        }


def extract_partition(u: np.ndarray, gauge: GaugeField, grid: Grid, zero_tol: float = DEFAULT_ZERO_TOL,
                      poles: PoleConfig | None = None, eigenvalue: float | None = None,
                      processes: int = 1, compute_energies: bool = True) -> NodalPartition:
    """Return the nodal partition of ``u``, written in the gauge ``gauge``.

    Raise ``AllZero`` if ``u`` vanishes identically.
    """
    u = np.asarray(u, dtype=float)
    nonzero, kept, labels = _nodal_labels(u, gauge, grid, zero_tol)
    k: int = int(labels.max()) + 1 if nonzero.any() else 0
    order: np.ndarray = np.argsort(labels, kind="stable")
    starts: np.ndarray = np.searchsorted(labels[order], np.arange(k + 1))
    domains: tuple[np.ndarray, ...] = tuple(read_only(order[starts[d]:starts[d + 1]]) for d in range(k))

    sigma: np.ndarray = gauge.sigma
    critical: list[CriticalPoint] = _critical_points(grid, u, sigma, nonzero, kept)
    associations: list[PoleAssociation] = _associate_poles(grid, u, sigma, nonzero, poles, critical)
    energies: np.ndarray = _energies(grid, u, kept, domains, processes) if compute_energies else np.zeros(0)
    partition: NodalPartition = NodalPartition(
        labels=read_only(labels),
        k=k,
        domains=domains,
        energies=read_only(energies),
        critical_points=tuple(critical),
        pole_associations=tuple(associations),
        u=read_only(u.copy()),
        sigma=sigma,
        kept_edges=read_only(kept),
        h=grid.h,
        eigenvalue=eigenvalue
    )
    logger.debug("nodal partition: %d domains, %d critical points, %d poles", k, len(critical), len(associations))
    return partition


def _flood_fill(size: int, a: np.ndarray, b: np.ndarray, nonzero: np.ndarray) -> np.ndarray:
    graph: csr_matrix = coo_matrix((np.ones(len(a)), (a, b)), shape=(size, size)).tocsr()
    _, components = connected_components(graph, directed=False)
    labels: np.ndarray = np.full(size, BOUNDARY, dtype=np.int64)
    if not nonzero.any():
        return labels
    _, first = np.unique(components[nonzero], return_index=True)
    ordered: np.ndarray = components[nonzero][np.sort(first)]
    relabel: np.ndarray = np.full(components.max() + 1, BOUNDARY, dtype=np.int64)
    relabel[ordered] = np.arange(len(ordered))
    labels[nonzero] = relabel[components[nonzero]]
    return labels


def _nodal_labels(u: np.ndarray, gauge: GaugeField, grid: Grid, zero_tol: float) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Return the nonzero nodes, the kept edges and the domain labels of ``u``."""
    if u.shape != (grid.size,):
        raise ValueError(f"Vector should have one entry per grid point.\n"
                         + f"Shape was {u.shape}, grid size {grid.size}")
    if not 0 < zero_tol < 0.1:
        raise ValueError(f"Zero tolerance should be in (0, 0.1).\n"
                         + f"It was {zero_tol}")
    peak: float = float(np.abs(u).max()) if u.size > 0 else 0.0
    if peak == 0:
        raise AllZero("Cannot extract the nodal partition of the zero vector")

    nonzero: np.ndarray = np.abs(u) > zero_tol * peak
    a, b = grid.edges[:, 0], grid.edges[:, 1]
    kept: np.ndarray = nonzero[a] & nonzero[b] & (u[a] * u[b] * gauge.sigma > 0)
    return nonzero, kept, _flood_fill(grid.size, a[kept], b[kept], nonzero)


def nodal_domain_count(u: np.ndarray, gauge: GaugeField, grid: Grid, zero_tol: float = DEFAULT_ZERO_TOL) -> int:
    """Return the number of nodal domains of ``u``, without critical points nor energies."""
    nonzero, _, labels = _nodal_labels(np.asarray(u, dtype=float), gauge, grid, zero_tol)
    return int(labels.max()) + 1 if nonzero.any() else 0


def eigenspace_indices(eigenvalues: np.ndarray, index: int, tol: float = EIGENSPACE_TOLERANCE) -> range:
    """Indices, counted from 1, of the eigenvalues within ``tol`` (relative) of the ``index``-th one.

    The range is contiguous around ``index`` and limited to the computed eigenvalues, so an eigenspace
    reaching past the last one is truncated.
    """
    target: float = float(eigenvalues[index - 1])
    width: float = tol * max(1.0, abs(target))
    first: int = index
    while first > 1 and abs(eigenvalues[first - 2] - target) <= width:
        first -= 1
    last: int = index
    while last < len(eigenvalues) and abs(eigenvalues[last] - target) <= width:
        last += 1
    return range(first, last + 1)

@dataclass(frozen=True, eq=False)
class EigenspaceChoice:
    """A vector of the eigenspace of ``λ_k`` and its number of nodal domains.

    ``dimension`` is the number of computed eigenvalues in that eigenspace; ``vector`` is ``u_k`` itself when it is 1.
    """
    vector: np.ndarray
    domains: int
    dimension: int


def k_domain_vector(spectrum: Spectrum, gauge: GaugeField, grid: Grid, k: int, zero_tol: float = DEFAULT_ZERO_TOL,
                    seed: int = DEFAULT_SEED, samples: int = EIGENSPACE_SAMPLES) -> EigenspaceChoice:
    """Look in the eigenspace of ``λ_k`` for a vector with ``k`` nodal domains.

    ``u_k`` is tried first. A 2-dimensional eigenspace is then scanned by ``samples`` rotations of its basis,
    a larger one by ``samples`` Gaussian combinations drawn with ``seed``. The first vector with ``k`` domains is
    returned, otherwise the one whose count is closest to ``k``.
    """
    indices: range = eigenspace_indices(spectrum.eigenvalues, k)
    best: np.ndarray = spectrum.vector(k)
    best_count: int = nodal_domain_count(best, gauge, grid, zero_tol)
    if best_count == k or len(indices) == 1:
        return EigenspaceChoice(best, best_count, len(indices))

    basis: np.ndarray = spectrum.eigenvectors[:, indices.start - 1:indices.stop - 1]
    coefficients: np.ndarray
    if basis.shape[1] == 2:
        angles: np.ndarray = math.pi * np.arange(samples) / samples
        coefficients = np.column_stack([np.cos(angles), np.sin(angles)])
    else:
        coefficients = np.random.default_rng(seed).standard_normal((samples, basis.shape[1]))
    for combination in coefficients:
        candidate: np.ndarray = basis @ combination
        count: int = nodal_domain_count(candidate, gauge, grid, zero_tol)
        if abs(count - k) < abs(best_count - k):
            best, best_count = candidate / (np.linalg.norm(candidate) * grid.h), count
            if count == k:
                break
    logger.debug("eigenspace of λ_%d has dimension %d; best vector has %d domains", k, len(indices), best_count)
    return EigenspaceChoice(best, best_count, len(indices))


def partition_operator(grid: Grid, u: np.ndarray, kept: np.ndarray) -> csr_matrix:
    """Block diagonal Dirichlet Laplacian of the domains cut out by the kept edges ``kept``.

    Only kept edges couple nodes. Across any other edge the interface is placed where the linear interpolant of
    the transported ``u`` vanishes, at the fraction ``θ`` of the edge, which adds ``(1/θ - 1)/h²`` to the diagonal.
    """
    a, b = grid.edges[:, 0], grid.edges[:, 1]
    inverse_h2: float = 1.0 / (grid.h * grid.h)
    magnitude: np.ndarray = np.abs(u)
    total: np.ndarray = magnitude[a] + magnitude[b]
    theta_a: np.ndarray = np.divide(magnitude[a], total, out=np.ones_like(total), where=total > 0)
    theta_b: np.ndarray = 1.0 - theta_a
    theta_b[total == 0] = 1.0
    cut: np.ndarray = ~kept
    correction: np.ndarray = np.zeros(grid.size)
    np.add.at(correction, a[cut], 1.0 / np.maximum(theta_a[cut], MIN_INTERFACE_FRACTION) - 1.0)
    np.add.at(correction, b[cut], 1.0 / np.maximum(theta_b[cut], MIN_INTERFACE_FRACTION) - 1.0)

    diagonal: np.ndarray = np.arange(grid.size)
    rows: np.ndarray = np.concatenate([a[kept], b[kept], diagonal])
    cols: np.ndarray = np.concatenate([b[kept], a[kept], diagonal])
    data: np.ndarray = np.concatenate([np.full(2 * int(kept.sum()), -inverse_h2), (4.0 + correction) * inverse_h2])
    return coo_matrix((data, (rows, cols)), shape=(grid.size, grid.size)).tocsr()


def domain_energy(partition: NodalPartition, i: int, grid: Grid) -> float:
    """Return ``λ(D_i)``, the ground energy of the Dirichlet Laplacian on the domain ``i``.

    Raise ``EmptyDomain`` if the domain does not exist or has no node.
    """
    if not 0 <= i < partition.k or len(partition.domains[i]) == 0:
        raise EmptyDomain(f"Partition has no domain {i}.\n"
                          + f"It has {partition.k} domains")
    nodes: np.ndarray = partition.domains[i]
    matrix: csr_matrix = partition_operator(grid, partition.u, partition.kept_edges)[nodes][:, nodes]
    return _ground_energy(matrix, grid.h, f"{grid.spec.identifier}/D{i}")


def domain_energies(partition: NodalPartition, grid: Grid, processes: int = 1) -> np.ndarray:
    """Return ``λ(D_i)`` for every domain, solving in a process pool when ``processes > 1``."""
    return _energies(grid, partition.u, partition.kept_edges, partition.domains, processes)


def _energies(grid: Grid, u: np.ndarray, kept: np.ndarray, domains: tuple[np.ndarray, ...], processes: int) -> np.ndarray:
    operator: csr_matrix = partition_operator(grid, u, kept)
    jobs: list[tuple[csr_matrix, float, str]] = [(operator[nodes][:, nodes], grid.h, f"{grid.spec.identifier}/D{i}")
                                                 for i, nodes in enumerate(domains)]
    if processes > 1 and len(jobs) > 1:
        with Pool(min(processes, len(jobs))) as pool:
            return np.asarray(pool.starmap(_ground_energy, jobs))
    return np.asarray([_ground_energy(*job) for job in jobs])


def _ground_energy(matrix: csr_matrix, h: float, name: str) -> float:
    operator: SparseOperator = SparseOperator(matrix.tocsr(), h, 0, name, GaugeField(read_only(np.ones(0, dtype=np.int8))))
    return float(smallest_eigenpairs(operator, 1).eigenvalues[0])


def loop_arity(grid: Grid, u: np.ndarray, sigma: np.ndarray, nonzero: np.ndarray, loop: list[int]) -> int:
    """Return the number of sign changes of the transported values of ``u`` along the closed node ``loop``."""
    transport: int = 1
    first: float | None = None
    previous: float | None = None
    changes: int = 0
    for node, edge in zip(loop, grid.loop_edges(loop)):
        if nonzero[node]:
            value: float = transport * np.sign(u[node])
            if first is None:
                first = value
            elif value != previous:
                changes += 1
            previous = value
        transport *= int(sigma[edge])
    if first is not None and transport * first != previous:
        changes += 1
    return changes


def _critical_points(grid: Grid, u: np.ndarray, sigma: np.ndarray, nonzero: np.ndarray, kept: np.ndarray) -> list[CriticalPoint]:
    candidates: list[CriticalPoint] = []
    for i, j in _interface_plaquettes(grid, kept):
        loop: list[int] | None = grid.ring_around_plaquette(i, j)
        if loop is None:
            continue
        arity: int = loop_arity(grid, u, sigma, nonzero, loop)
        if arity >= 3:
            candidates.append(CriticalPoint(grid.plaquette_center(i, j), arity, "plaquette", (i, j)))
    for node in np.flatnonzero(~nonzero):
        i, j = int(grid.ix[node]), int(grid.iy[node])
        loop = grid.ring_around_node(i, j)
        if loop is None:
            continue
        arity = loop_arity(grid, u, sigma, nonzero, loop)
        if arity >= 3:
            candidates.append(CriticalPoint(grid.lattice_point(i, j), arity, "node", (i, j)))
    return _cluster(candidates, CLUSTER_RADIUS * grid.h)


def _interface_plaquettes(grid: Grid, kept: np.ndarray) -> list[tuple[int, int]]:
    """Full plaquettes with at least one edge that does not join two nodes of the same domain."""
    j, i = np.nonzero(grid.full_plaquettes)
    inside: np.ndarray = (kept[grid.h_edge_id[j, i]] & kept[grid.h_edge_id[j + 1, i]] &
                          kept[grid.v_edge_id[j, i]] & kept[grid.v_edge_id[j, i + 1]])
    return [(int(p), int(q)) for p, q in zip(i[~inside], j[~inside])]


def _cluster(candidates: list[CriticalPoint], radius: float) -> list[CriticalPoint]:
    """Keep the highest arity candidate of every group closer than ``radius``."""
    ranked: list[CriticalPoint] = sorted(candidates, key=lambda point: (-point.arity, point.kind != "plaquette", point.index[1], point.index[0]))
    accepted: list[CriticalPoint] = []
    for candidate in ranked:
        if all(math.dist(candidate.location, point.location) > radius for point in accepted):
            accepted.append(candidate)
    return sorted(accepted, key=lambda point: (point.location[1], point.location[0]))


def _associate_poles(grid: Grid, u: np.ndarray, sigma: np.ndarray, nonzero: np.ndarray,
                     poles: PoleConfig | None, critical: list[CriticalPoint]) -> list[PoleAssociation]:
    if poles is None:
        return []
    associations: list[PoleAssociation] = []
    for (i, j), point in zip(poles.plaquettes, poles.points):
        arities: list[int] = []
        for radius in (1, 2):
            loop: list[int] | None = grid.ring_around_plaquette(i, j, radius)
            if loop is not None:
                arities.append(loop_arity(grid, u, sigma, nonzero, loop))
        arity: int = max(arities, default=0)
        match_index: int | None = None
        distance: float = math.inf
        for index, candidate in enumerate(critical):
            candidate_distance: float = math.dist(point, candidate.location)
            if candidate_distance <= POLE_MATCH_RADIUS * grid.h and candidate_distance < distance:
                match_index, distance = index, candidate_distance
        if match_index is None:
            logger.debug("pole at (%.4f, %.4f) matches no critical point", *point)
        associations.append(PoleAssociation((i, j), point, arity, match_index, distance))
    return associations


def critical_points(partition: NodalPartition, grid: Grid) -> tuple[CriticalPoint, ...]:
    """Return the critical points of ``partition``, sorted by ``y`` then ``x``."""
    nonzero: np.ndarray = partition.labels != BOUNDARY
    return tuple(_critical_points(grid, partition.u, partition.sigma, nonzero, partition.kept_edges))

@dataclass(frozen=True)
class BoundaryGraph:
    """Dual-lattice picture of the boundary set ``N(𝒟)``.

    Vertices are plaquettes and zero nodes around which at least 2 arcs leave; ``arities[v]`` is that count.
    Arcs join two plaquette vertices separated by an edge crossing the boundary set, two adjacent zero node
    vertices, or a plaquette vertex and a zero node vertex at one of its corners.
    """
    vertices: tuple[tuple[str, tuple[int, int]], ...]
    locations: tuple[Point, ...]
    arities: tuple[int, ...]
    arcs: tuple[tuple[int, int], ...] = field(default=())

    @property
    def critical_vertices(self) -> tuple[int, ...]:
        return tuple(v for v, arity in enumerate(self.arities) if arity >= 3)


def boundary_graph(partition: NodalPartition, grid: Grid) -> BoundaryGraph:
    nonzero: np.ndarray = partition.labels != BOUNDARY
    u, sigma, kept = partition.u, partition.sigma, partition.kept_edges
    vertices: list[tuple[str, tuple[int, int]]] = []
    locations: list[Point] = []
    arities: list[int] = []
    for i, j in _interface_plaquettes(grid, kept):
        loop: list[int] | None = grid.ring_around_plaquette(i, j)
        if loop is None:
            continue
        arity: int = loop_arity(grid, u, sigma, nonzero, loop)
        if arity >= 2:
            vertices.append(("plaquette", (i, j)))
            locations.append(grid.plaquette_center(i, j))
            arities.append(arity)
    for node in np.flatnonzero(~nonzero):
        i, j = int(grid.ix[node]), int(grid.iy[node])
        loop = grid.ring_around_node(i, j)
        arity = loop_arity(grid, u, sigma, nonzero, loop) if loop is not None else 0
        if arity >= 2:
            vertices.append(("node", (i, j)))
            locations.append(grid.lattice_point(i, j))
            arities.append(arity)

    position: dict[tuple[str, tuple[int, int]], int] = {vertex: v for v, vertex in enumerate(vertices)}
    arcs: set[tuple[int, int]] = set()

    def link(first: tuple[str, tuple[int, int]], second: tuple[str, tuple[int, int]]) -> None:
        if first in position and second in position:
            arcs.add(tuple(sorted((position[first], position[second]))))

    for edge in np.flatnonzero(~kept):
        a, b = int(grid.edges[edge, 0]), int(grid.edges[edge, 1])
        ia, ja, ib, jb = int(grid.ix[a]), int(grid.iy[a]), int(grid.ix[b]), int(grid.iy[b])
        if nonzero[a] and nonzero[b]:
            if ja == jb:
                link(("plaquette", (ia, ja - 1)), ("plaquette", (ia, ja)))
            else:
                link(("plaquette", (ia - 1, ja)), ("plaquette", (ia, ja)))
        elif not nonzero[a] and not nonzero[b]:
            link(("node", (ia, ja)), ("node", (ib, jb)))
    for kind, (i, j) in vertices:
        if kind == "plaquette":
            for corner in ((i, j), (i + 1, j), (i + 1, j + 1), (i, j + 1)):
                link((kind, (i, j)), ("node", corner))
    return BoundaryGraph(tuple(vertices), tuple(locations), tuple(arities), tuple(sorted(arcs)))

@dataclass(frozen=True)
class EulerVerdict:
    """``#X^odd <= 2k - 4``; the bound is vacuous for ``k <= 2``."""
    k: int
    odd_points: int
    bound: int

    @property
    def vacuous(self) -> bool:
        return self.k <= 2

    @property
    def passed(self) -> bool:
        return self.odd_points <= max(0, self.bound)


def euler_check(partition: NodalPartition) -> EulerVerdict:
    verdict: EulerVerdict = EulerVerdict(partition.k, len(partition.odd_critical_points), 2 * partition.k - 4)
    if not verdict.passed:
        logger.warning("%d odd critical points exceed the Euler bound %d for k=%d", verdict.odd_points, verdict.bound, verdict.k)
    return verdict

@dataclass(frozen=True)
class CourantVerdict:
    index: int
    domains: int

    @property
    def passed(self) -> bool:
        return self.domains <= self.index


def courant_check(partition: NodalPartition, index: int) -> CourantVerdict:
    """Check that the ``index``-th eigenfunction has at most ``index`` nodal domains."""
    if index < 1:
        raise ValueError(f"Eigenfunction index should be >= 1.\n"
                         + f"It was {index}")
    verdict: CourantVerdict = CourantVerdict(index, partition.k)
    if not verdict.passed:
        logger.warning("eigenfunction %d has %d nodal domains", index, partition.k)
    return verdict


def domain_areas(partition: NodalPartition, grid: Grid) -> np.ndarray:
    """Estimate ``A(D_i)`` for every domain.

    Every node owns an ``h×h`` cell. The cell is stretched towards each neighbor it is not joined to, up to the
    interface: the grid boundary counts as one spacing away, a cut edge as the fraction ``θ`` of the edge.
    """
    a, b = grid.edges[:, 0], grid.edges[:, 1]
    magnitude: np.ndarray = np.abs(partition.u)
    total: np.ndarray = magnitude[a] + magnitude[b]
    theta_a: np.ndarray = np.divide(magnitude[a], total, out=np.ones_like(total), where=total > 0)
    theta_b: np.ndarray = np.divide(magnitude[b], total, out=np.ones_like(total), where=total > 0)
    degree: np.ndarray = np.bincount(grid.edges.ravel(), minlength=grid.size)
    stretch: np.ndarray = 0.5 * (4 - degree).astype(float)
    cut: np.ndarray = ~partition.kept_edges
    np.add.at(stretch, a[cut], theta_a[cut] - 0.5)
    np.add.at(stretch, b[cut], theta_b[cut] - 0.5)
    cells: np.ndarray = grid.h * grid.h * (1.0 + stretch)
    return np.asarray([float(cells[domain].sum()) for domain in partition.domains])


def domain_faber_krahn(partition: NodalPartition, grid: Grid) -> tuple[FaberKrahnCheck, ...]:
    """Check ``A(D_i)·λ(D_i) >= πj²`` for every domain, with the areas of ``domain_areas``."""
    if len(partition.energies) != partition.k:
        raise ValueError("Partition energies were not computed")
    return tuple(faber_krahn_lhs(float(area), float(energy), 1)
                 for area, energy in zip(domain_areas(partition, grid), partition.energies))

@dataclass(frozen=True)
class HexagonalRow:
    k: int
    L_k: float
    normalized_energy: float
    hexagon_ratio: float
    above_faber_krahn: bool
    nu_k: int | None = None

    @property
    def nu_over_k(self) -> float | None:
        return None if self.nu_k is None else self.nu_k / self.k

@dataclass(frozen=True)
class HexagonalReport:
    """``A·𝔏_k/k`` and ``ν_k/k`` against ``λ(Hexa₁)``, the ground energy of the regular hexagon of area 1."""
    area: float
    hexagon_energy: float
    faber_krahn_constant: float
    rows: tuple[HexagonalRow, ...]


@cache
def hexagon_energy(h: float = 1 / 64) -> float:
    """Ground energy of the regular hexagon of area 1, extrapolated from ``h`` and ``h/2``."""
    estimate = richardson_spectrum(DomainSpec.regular_polygon(6, 1.0), 1, h)
    logger.info("hexagon ground energy: %.6f (h=%g), %.6f (h=%g), extrapolated %.6f",
                estimate.coarse[0], h, estimate.fine[0], h / 2, estimate.extrapolated[0])
    return float(estimate.extrapolated[0])


def hexagonal_diagnostic(L_k: Mapping[int, float] | Iterable[tuple[int, float]], area: float,
                         nu: Mapping[int, int] | None = None, h: float = 1 / 64) -> HexagonalReport:
    """Tabulate ``A·𝔏_k/k`` (and ``ν_k/k`` when given) versus ``k``; needs at least 2 entries."""
    entries: list[tuple[int, float]] = sorted(L_k.items() if isinstance(L_k, Mapping) else L_k)
    if len(entries) < 2:
        raise ValueError(f"Trend report needs at least 2 values of k.\n"
                         + f"It got {len(entries)}")
    if not area > 0:
        raise GeometryError(f"Area should be positive.\n"
                            + f"It was {area}")
    reference: float = hexagon_energy(h)
    faber_krahn: float = math.pi * bessel_j01() ** 2
    rows: list[HexagonalRow] = []
    for k, energy in entries:
        if k < 1 or not energy > 0:
            raise ValueError(f"Entries should have k >= 1 and a positive energy.\n"
                             + f"It was k={k}, energy={energy}")
        normalized: float = area * energy / k
        rows.append(HexagonalRow(k, energy, normalized, normalized / reference, normalized >= faber_krahn * (1 - 1e-12),
                                 None if nu is None else nu.get(k)))
    return HexagonalReport(area, reference, faber_krahn, tuple(rows))
