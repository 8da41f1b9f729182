"""Grid construction, pole placement and branch cuts."""
from minpart.data_structs.grid import CutDirection, CutSet, Grid, PoleConfig, read_only
from minpart.errors import ConfigError, EmptyGrid, GeometryError, PoleOutsideDomain
from minpart.data_structs.domain import DomainSpec, Point

from collections.abc import Sequence
import numpy as np
import logging
import math

logger = logging.getLogger(__name__)

INTERIOR_TOLERANCE: float = 1e-12

def build_grid(spec: DomainSpec, h: float) -> Grid:
    """Return the grid of spacing ``h`` on ``spec``.

    A lattice node is interior when it lies in ``Ω`` at distance at least ``h/2`` from the complement.
    Raise ``EmptyGrid`` if no node is interior.
    """
    if not (h > 0 and math.isfinite(h)):
        raise ConfigError(f"Grid spacing should be > 0.\n"
                          + f"It was {h}")
    if h >= spec.diameter / 2:
        raise ConfigError(f"Grid spacing should be smaller than half the domain diameter.\n"
                          + f"Spacing was {h}, diameter {spec.diameter}")
    if spec.shape == "polygon":
        logger.debug("simple connectivity of %s is not verified", spec.identifier)
    xmin, ymin, xmax, ymax = spec.bounding_box()
    nx: int = int(math.floor((xmax - xmin) / h + 1e-9)) + 1
    ny: int = int(math.floor((ymax - ymin) / h + 1e-9)) + 1
    xs: np.ndarray = xmin + np.arange(nx) * h
    ys: np.ndarray = ymin + np.arange(ny) * h
    x, y = np.meshgrid(xs, ys)
    mask: np.ndarray = spec.inside_distance(x, y) >= h / 2 - INTERIOR_TOLERANCE
    size: int = int(mask.sum())
    if size == 0:
        raise EmptyGrid(f"No interior point on {spec.identifier} with spacing {h}")

    index_map: np.ndarray = np.full(mask.shape, -1, dtype=np.int64)
    index_map[mask] = np.arange(size)
    iy, ix = np.nonzero(mask)
    coords: np.ndarray = np.column_stack([xs[ix], ys[iy]])

    horizontal: np.ndarray = mask[:, :-1] & mask[:, 1:]
    vertical: np.ndarray = mask[:-1, :] & mask[1:, :]
    n_horizontal: int = int(horizontal.sum())
    n_vertical: int = int(vertical.sum())
    h_edge_id: np.ndarray = np.full(mask.shape, -1, dtype=np.int64)
    v_edge_id: np.ndarray = np.full(mask.shape, -1, dtype=np.int64)
    h_edge_id[:, :-1][horizontal] = np.arange(n_horizontal)
    v_edge_id[:-1, :][vertical] = n_horizontal + np.arange(n_vertical)
    edges: np.ndarray = np.vstack([
        np.column_stack([index_map[:, :-1][horizontal], index_map[:, 1:][horizontal]]),
        np.column_stack([index_map[:-1, :][vertical], index_map[1:, :][vertical]])
    ]).astype(np.int64)
    full_plaquettes: np.ndarray = mask[:-1, :-1] & mask[:-1, 1:] & mask[1:, :-1] & mask[1:, 1:]

    grid: Grid = Grid(
        spec=spec,
        h=float(h),
        origin=(float(xmin), float(ymin)),
        mask=read_only(mask),
        index_map=read_only(index_map),
        ix=read_only(ix.astype(np.int64)),
        iy=read_only(iy.astype(np.int64)),
        coords=read_only(coords),
        edges=read_only(edges.reshape(-1, 2)),
        h_edge_id=read_only(h_edge_id),
        v_edge_id=read_only(v_edge_id),
        full_plaquettes=read_only(full_plaquettes)
    )
    logger.debug("grid on %s, h=%g: %d interior points, %d edges", spec.identifier, h, grid.size, grid.n_edges)
    return grid


def snap_poles(grid: Grid, points: Sequence[Point], allow_duplicates: bool = False) -> PoleConfig:
    """Move every point to the center of the plaquette containing it.

    Raise ``PoleOutsideDomain`` if that plaquette is not full, ``GeometryError`` if two poles share a plaquette
    (unless ``allow_duplicates``).
    """
    plaquettes: list[tuple[int, int]] = []
    for x, y in points:
        i: int = int(math.floor((x - grid.origin[0]) / grid.h))
        j: int = int(math.floor((y - grid.origin[1]) / grid.h))
        if not grid.is_full_plaquette(i, j):
            raise PoleOutsideDomain(f"Pole ({x}, {y}) does not lie in a fully interior plaquette\n"
                                    + f"of the grid on {grid.spec.identifier} with spacing {grid.h}")
        plaquettes.append((i, j))
    if not allow_duplicates and len(set(plaquettes)) != len(plaquettes):
        raise GeometryError(f"Poles should be pairwise distinct after snapping.\n"
                            + f"Plaquettes were {plaquettes}")
    return PoleConfig(
        plaquettes=tuple(plaquettes),
        points=tuple(grid.plaquette_center(i, j) for i, j in plaquettes)
    )


def default_cuts(grid: Grid, poles: PoleConfig) -> CutSet:
    """Return the canonical cut set: a vertical ray downward from every pole."""
    return cuts_in_direction(grid, poles, CutDirection.DOWN)


def cuts_in_direction(grid: Grid, poles: PoleConfig, directions: CutDirection | Sequence[CutDirection]) -> CutSet:
    """Return straight cuts from every pole, ``directions`` being one direction for all or one per pole."""
    if isinstance(directions, CutDirection):
        directions = [directions] * len(poles)
    if len(directions) != len(poles):
        raise ConfigError(f"One cut direction per pole is needed.\n"
                          + f"Got {len(directions)} directions for {len(poles)} poles")
    paths: list[tuple[int, ...]] = []
    for (i, j), direction in zip(poles.plaquettes, directions):
        if not grid.is_full_plaquette(i, j):
            raise PoleOutsideDomain(f"Plaquette ({i}, {j}) is not fully interior")
        paths.append(_ray(grid, i, j, direction))
    return CutSet(directions=tuple(directions), paths=tuple(paths))


def _ray(grid: Grid, i: int, j: int, direction: CutDirection) -> tuple[int, ...]:
    """Edges crossed by the ray leaving the center of plaquette ``(i, j)`` in ``direction``, nearest first."""
    crossed: np.ndarray
    match direction:
        case CutDirection.DOWN:
            crossed = grid.h_edge_id[j::-1, i]
        case CutDirection.UP:
            crossed = grid.h_edge_id[j + 1:, i]
        case CutDirection.LEFT:
            crossed = grid.v_edge_id[j, i::-1]
        case CutDirection.RIGHT:
            crossed = grid.v_edge_id[j, i + 1:]
    return tuple(int(edge) for edge in crossed if edge >= 0)
