from minpart.numerics.geometry import build_grid, snap_poles
from minpart.data_structs.domain import DomainSpec
from minpart.data_structs.grid import Grid, PoleConfig

import pytest


@pytest.fixture
def unit_square() -> DomainSpec:
    return DomainSpec.unit_square()


@pytest.fixture
def tiny_grid(unit_square: DomainSpec) -> Grid:
    """2×2 interior nodes, one full plaquette centered at (0.5, 0.5)."""
    return build_grid(unit_square, 1 / 3)


@pytest.fixture
def square_grid(unit_square: DomainSpec) -> Grid:
    return build_grid(unit_square, 1 / 16)


@pytest.fixture
def centered_pole_grid(unit_square: DomainSpec) -> Grid:
    """Odd number of cells per side, so (0.5, 0.5) is a plaquette center."""
    return build_grid(unit_square, 1 / 15)


@pytest.fixture
def centered_pole(centered_pole_grid: Grid) -> PoleConfig:
    return snap_poles(centered_pole_grid, [(0.5, 0.5)])


@pytest.fixture(autouse=True)
def single_process(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setenv("MINPART_THREADS", "1")
