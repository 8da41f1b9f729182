from minpart.numerics.geometry import build_grid, cuts_in_direction, default_cuts, snap_poles
from minpart.errors import BadPolygon, ConfigError, EmptyGrid, GeometryError, PoleOutsideDomain
from minpart.data_structs.domain import DomainSpec, Shape
from minpart.data_structs.grid import CutDirection, Grid

import numpy as np
import pytest
import math


def test_parse_named_domains():
    assert DomainSpec.parse("unit_square").shape == Shape.UNIT_SQUARE
    assert DomainSpec.parse("disk").area == pytest.approx(math.pi)
    assert DomainSpec.parse("hexagon").area == pytest.approx(1.0)
    assert len(DomainSpec.parse("hexagon").vertices) == 6


def test_parse_json_domain():
    spec = DomainSpec.parse('{"shape": "rectangle", "width": 2, "height": 1}')
    assert spec.area == pytest.approx(2.0)
    assert spec.to_dict() == {"shape": "rectangle", "width": 2.0, "height": 1.0}


def test_parse_rejects_unknown_names():
    with pytest.raises(ConfigError):
        DomainSpec.parse("triangle")
    with pytest.raises(ConfigError):
        DomainSpec.parse('{"shape": "rectangle", "width": 2}')


def test_polygon_is_stored_counterclockwise():
    clockwise = DomainSpec.polygon([(0, 0), (0, 1), (1, 1), (1, 0)])
    assert clockwise.area == pytest.approx(1.0)
    assert clockwise.vertices[0] == (1.0, 0.0)


def test_self_intersecting_polygon_is_rejected():
    with pytest.raises(BadPolygon):
        DomainSpec.polygon([(0, 0), (1, 1), (1, 0), (0, 1)])


def test_tiny_grid_layout(tiny_grid: Grid):
    assert tiny_grid.size == 4
    assert tiny_grid.n_edges == 4
    assert np.allclose(tiny_grid.coords, [[1 / 3, 1 / 3], [2 / 3, 1 / 3], [1 / 3, 2 / 3], [2 / 3, 2 / 3]])
    assert np.array_equal(np.argwhere(tiny_grid.full_plaquettes), [[1, 1]])
    assert tiny_grid.is_full_plaquette(1, 1)
    assert not tiny_grid.is_full_plaquette(0, 0)


def test_grid_edges_join_neighbors(square_grid: Grid):
    a, b = square_grid.edges[:, 0], square_grid.edges[:, 1]
    assert np.all(a < b)
    steps = np.abs(square_grid.coords[a] - square_grid.coords[b]).sum(axis=1)
    assert np.allclose(steps, square_grid.h)
    assert square_grid.size == 15 * 15
    assert square_grid.n_edges == 2 * 15 * 14


def test_disk_grid_keeps_nodes_away_from_the_boundary():
    grid = build_grid(DomainSpec.disk(), 0.1)
    assert np.all(np.hypot(grid.coords[:, 0], grid.coords[:, 1]) <= 1 - 0.05 + 1e-12)


def test_disk_node_count_follows_the_inner_disk():
    h: float = 0.05
    grid = build_grid(DomainSpec.disk(), h)
    assert grid.size == pytest.approx(math.pi * (1 - h / 2) ** 2 / h ** 2, rel=0.02)


def test_grid_arrays_are_read_only(tiny_grid: Grid):
    with pytest.raises(ValueError):
        tiny_grid.coords[0, 0] = 0.0


def test_invalid_spacing():
    with pytest.raises(ConfigError):
        build_grid(DomainSpec.unit_square(), 0.0)
    with pytest.raises(ConfigError):
        build_grid(DomainSpec.unit_square(), 0.8)


def test_empty_grid():
    with pytest.raises(EmptyGrid):
        build_grid(DomainSpec.rectangle(10, 0.1), 1.0)


def test_snap_poles_to_plaquette_centers(centered_pole_grid: Grid):
    poles = snap_poles(centered_pole_grid, [(0.51, 0.48), (0.21, 0.31)])
    assert poles.plaquettes == ((7, 7), (3, 4))
    assert poles.points[0] == pytest.approx((0.5, 0.5))
    assert poles.key == ((3, 4), (7, 7))


def test_snap_poles_errors(centered_pole_grid: Grid):
    with pytest.raises(PoleOutsideDomain):
        snap_poles(centered_pole_grid, [(0.01, 0.5)])
    with pytest.raises(GeometryError):
        snap_poles(centered_pole_grid, [(0.5, 0.5), (0.52, 0.52)])
    assert len(snap_poles(centered_pole_grid, [(0.5, 0.5), (0.52, 0.52)], allow_duplicates=True)) == 2


def test_default_cut_goes_down_to_the_boundary(centered_pole_grid: Grid):
    poles = snap_poles(centered_pole_grid, [(0.5, 0.5)])
    cuts = default_cuts(centered_pole_grid, poles)
    assert cuts.directions == (CutDirection.DOWN,)
    assert len(cuts.paths[0]) == 7
    assert all(centered_pole_grid.edges[edge, 1] == centered_pole_grid.edges[edge, 0] + 1 for edge in cuts.paths[0])


def test_cut_directions_must_match_the_poles(centered_pole_grid: Grid):
    poles = snap_poles(centered_pole_grid, [(0.5, 0.5)])
    with pytest.raises(ConfigError):
        cuts_in_direction(centered_pole_grid, poles, [CutDirection.UP, CutDirection.LEFT])
