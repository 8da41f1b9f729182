from minpart.data_structs.domain import DomainSpec, Point

from scipy.sparse import coo_matrix, csr_matrix

from dataclasses import dataclass
from enum import Enum
from typing import Any
import numpy as np
import json

def read_only(array: np.ndarray) -> np.ndarray:
    """Return ``array`` with the write flag cleared."""
    array.setflags(write=False)
    return array

@dataclass(frozen=True, eq=False)
class Grid:
    """A uniform grid discretizing a ``DomainSpec``.

    Lattice nodes are ``origin + (i·h, j·h)``; lattice arrays have shape ``(ny, nx)`` and are indexed ``[j, i]``,
    so ``j`` grows with ``y``.
    Interior nodes are numbered ``0..N-1`` row by row, starting from the lowest row.

    Edges join 4-neighbor interior nodes, with the smaller index first. Horizontal edges come first.
    ``h_edge_id[j, i]`` is the edge from ``(i, j)`` to ``(i+1, j)``, ``v_edge_id[j, i]`` the edge from ``(i, j)`` to ``(i, j+1)``,
    ``-1`` where there is no such edge.

    The plaquette ``(i, j)`` is the lattice cell with lower-left corner ``(i, j)``; it is full when its four corners are interior.
    Every array is read-only.
    """
    spec: DomainSpec
    h: float
    origin: tuple[float, float]
    mask: np.ndarray
    index_map: np.ndarray
    ix: np.ndarray
    iy: np.ndarray
    coords: np.ndarray
    edges: np.ndarray
    h_edge_id: np.ndarray
    v_edge_id: np.ndarray
    full_plaquettes: np.ndarray

    @property
    def size(self) -> int:
        return len(self.ix)

    @property
    def shape(self) -> tuple[int, int]:
        """Return ``(ny, nx)``."""
        return self.mask.shape

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def node(self, i: int, j: int) -> int:
        """Return the index of the lattice node ``(i, j)``, ``-1`` if it is not interior or out of the lattice."""
        ny, nx = self.shape
        if 0 <= i < nx and 0 <= j < ny:
            return int(self.index_map[j, i])
        return -1

    def lattice_point(self, i: float, j: float) -> Point:
        return (self.origin[0] + i * self.h, self.origin[1] + j * self.h)

    def plaquette_center(self, i: int, j: int) -> Point:
        return self.lattice_point(i + 0.5, j + 0.5)

    def is_full_plaquette(self, i: int, j: int) -> bool:
        ny, nx = self.shape
        return 0 <= i < nx - 1 and 0 <= j < ny - 1 and bool(self.full_plaquettes[j, i])

    def plaquette_edges(self, i: int, j: int) -> tuple[int, int, int, int]:
        """Return the edges ``(bottom, right, top, left)`` of the full plaquette ``(i, j)``."""
        return (int(self.h_edge_id[j, i]), int(self.v_edge_id[j, i + 1]),
                int(self.h_edge_id[j + 1, i]), int(self.v_edge_id[j, i]))

    def edge_between(self, a: int, b: int) -> int:
        """Return the edge joining the interior nodes ``a`` and ``b``, ``-1`` if they are not neighbors."""
        ia, ja = int(self.ix[a]), int(self.iy[a])
        ib, jb = int(self.ix[b]), int(self.iy[b])
        match (ib - ia, jb - ja):
            case (1, 0):
                return int(self.h_edge_id[ja, ia])
            case (-1, 0):
                return int(self.h_edge_id[jb, ib])
            case (0, 1):
                return int(self.v_edge_id[ja, ia])
            case (0, -1):
                return int(self.v_edge_id[jb, ib])
            case _:
                return -1

    def loop_edges(self, loop: list[int]) -> list[int]:
        """Return the edges walked by the closed node loop ``loop`` (the last edge closes it)."""
        return [self.edge_between(loop[k], loop[(k + 1) % len(loop)]) for k in range(len(loop))]

    def ring_around_plaquette(self, i: int, j: int, radius: int = 1) -> list[int] | None:
        """Counterclockwise node loop around the plaquette ``(i, j)``.

        ``radius`` 1 gives its 4 corners, 2 the 12 nodes around the 3×3 block of plaquettes centered on it.
        Return ``None`` if a node of the loop is not interior.
        """
        return self.__square_ring(i - radius + 1, j - radius + 1, i + radius, j + radius)

    def ring_around_node(self, i: int, j: int, radius: int = 1) -> list[int] | None:
        """Counterclockwise node loop at Chebyshev distance ``radius`` from node ``(i, j)``, ``None`` if incomplete."""
        return self.__square_ring(i - radius, j - radius, i + radius, j + radius)

    def rectangle_loop(self, i0: int, j0: int, i1: int, j1: int) -> list[int] | None:
        """Counterclockwise node loop on the border of the lattice rectangle ``[i0, i1]×[j0, j1]``."""
        return self.__square_ring(i0, j0, i1, j1)

    def __square_ring(self, i0: int, j0: int, i1: int, j1: int) -> list[int] | None:
        if i1 <= i0 or j1 <= j0:
            return None
        lattice: list[tuple[int, int]] = ([(i, j0) for i in range(i0, i1)] +
                                          [(i1, j) for j in range(j0, j1)] +
                                          [(i, j1) for i in range(i1, i0, -1)] +
                                          [(i0, j) for j in range(j1, j0, -1)])
        loop: list[int] = [self.node(i, j) for i, j in lattice]
        if min(loop) < 0:
            return None
        return loop

    def adjacency(self) -> csr_matrix:
        """Return the symmetric 0/1 adjacency matrix."""
        rows: np.ndarray = np.concatenate([self.edges[:, 0], self.edges[:, 1]])
        cols: np.ndarray = np.concatenate([self.edges[:, 1], self.edges[:, 0]])
        return coo_matrix((np.ones(len(rows)), (rows, cols)), shape=(self.size, self.size)).tocsr()

    def to_json_dict(self) -> dict[str, Any]:
        """Diagnostic dump: indices and coordinates of the interior nodes."""
        return {
            "domain": self.spec.to_dict(),
            "h": self.h,
            "origin": list(self.origin),
            "lattice_shape": list(self.shape),
            "size": self.size,
            "ix": self.ix.tolist(),
            "iy": self.iy.tolist(),
            "coords": self.coords.tolist()
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)

@dataclass(frozen=True)
class PoleConfig:
    """Poles ``X = (X₁, …, X_ℓ)``, each at the center of a full plaquette of a grid.

    ``plaquettes`` holds the lattice indices ``(i, j)`` of the plaquettes, ``points`` their exact centers.
    """
    plaquettes: tuple[tuple[int, int], ...] = ()
    points: tuple[Point, ...] = ()

    def __len__(self) -> int:
        return len(self.plaquettes)

    @property
    def key(self) -> tuple[tuple[int, int], ...]:
        """Order independent identity of the configuration."""
        return tuple(sorted(self.plaquettes))

class CutDirection(Enum):
    """Direction of the straight ray drawn from a pole to the boundary."""
    DOWN = "down"
    UP = "up"
    LEFT = "left"
    RIGHT = "right"

@dataclass(frozen=True)
class CutSet:
    """One cut per pole: the ids of the grid edges crossed by the ray from the pole to the boundary.

    An edge may be crossed by several cuts, only the parity of the crossings matters.
    """
    directions: tuple[CutDirection, ...] = ()
    paths: tuple[tuple[int, ...], ...] = ()

    def __len__(self) -> int:
        return len(self.paths)

    def crossing_counts(self, n_edges: int) -> np.ndarray:
        """Return how many cuts cross each edge."""
        counts: np.ndarray = np.zeros(n_edges, dtype=np.int64)
        for path in self.paths:
            np.add.at(counts, np.asarray(path, dtype=np.int64), 1)
        return counts
