from minpart.numerics.magnetic_operator import GaugeField, assemble_ab, assemble_laplacian, check_flux, gauge_equivalent
from minpart.numerics.geometry import build_grid, cuts_in_direction, default_cuts, snap_poles
from minpart.errors import DifferentStructure, InconsistentCuts
from minpart.numerics.eigensolver import smallest_eigenpairs
from minpart.data_structs.grid import CutDirection, CutSet, Grid, PoleConfig
from minpart.data_structs.domain import DomainSpec

import numpy as np
import pytest


def test_laplacian_entries(tiny_grid: Grid):
    operator = assemble_laplacian(tiny_grid)
    dense = operator.matrix.toarray()
    assert operator.dimension == 4
    assert operator.n_poles == 0
    assert np.allclose(np.diag(dense), 36.0)
    assert np.allclose(dense, dense.T)
    assert dense[0, 1] == pytest.approx(-9.0)
    assert dense[0, 3] == 0.0


def test_pole_flips_the_cut_edges(centered_pole_grid: Grid, centered_pole: PoleConfig):
    cuts = default_cuts(centered_pole_grid, centered_pole)
    operator = assemble_ab(centered_pole_grid, centered_pole, cuts)
    laplacian = assemble_laplacian(centered_pole_grid)
    flipped = np.flatnonzero(operator.gauge.sigma == -1)
    assert sorted(flipped.tolist()) == sorted(cuts.paths[0])
    difference = (operator.matrix - laplacian.matrix).tocoo()
    assert np.count_nonzero(difference.data) == 2 * len(cuts.paths[0])
    assert abs(operator.matrix - operator.matrix.T).max() == 0


def test_flux_is_pi_exactly_at_the_pole(centered_pole_grid: Grid, centered_pole: PoleConfig):
    gauge = GaugeField.from_cuts(centered_pole_grid, default_cuts(centered_pole_grid, centered_pole))
    products = gauge.plaquette_products(centered_pole_grid)
    assert products[7, 7] == -1
    assert np.count_nonzero(products == -1) == 1
    check_flux(centered_pole_grid, gauge, centered_pole)


def test_missing_cut_is_inconsistent(centered_pole_grid: Grid, centered_pole: PoleConfig):
    with pytest.raises(InconsistentCuts):
        assemble_ab(centered_pole_grid, centered_pole, CutSet())
    with pytest.raises(InconsistentCuts):
        check_flux(centered_pole_grid, GaugeField.trivial(centered_pole_grid), centered_pole)


def test_two_poles_sharing_a_column(centered_pole_grid: Grid):
    poles = snap_poles(centered_pole_grid, [(0.5, 0.5), (0.5, 0.77)])
    operator = assemble_ab(centered_pole_grid, poles, default_cuts(centered_pole_grid, poles))
    assert operator.n_poles == 2
    products = operator.gauge.plaquette_products(centered_pole_grid)
    assert np.count_nonzero(products == -1) == 2


def test_cut_choices_are_gauge_equivalent(centered_pole_grid: Grid, centered_pole: PoleConfig):
    down = assemble_ab(centered_pole_grid, centered_pole, default_cuts(centered_pole_grid, centered_pole))
    up = assemble_ab(centered_pole_grid, centered_pole, cuts_in_direction(centered_pole_grid, centered_pole, CutDirection.UP))
    verdict = gauge_equivalent(down, up)
    assert verdict.equivalent
    scaling = np.diag(verdict.witness.astype(float))
    assert np.array_equal(scaling @ down.matrix.toarray() @ scaling, up.matrix.toarray())


def test_different_poles_are_not_gauge_equivalent(centered_pole_grid: Grid, centered_pole: PoleConfig):
    other = snap_poles(centered_pole_grid, [(0.3, 0.3)])
    first = assemble_ab(centered_pole_grid, centered_pole, default_cuts(centered_pole_grid, centered_pole))
    second = assemble_ab(centered_pole_grid, other, default_cuts(centered_pole_grid, other))
    verdict = gauge_equivalent(first, second)
    assert not verdict.equivalent
    assert verdict.witness is None
    assert not gauge_equivalent(first, assemble_laplacian(centered_pole_grid)).equivalent


def test_equivalence_check_leaves_the_operators_untouched(centered_pole_grid: Grid, centered_pole: PoleConfig):
    down = assemble_ab(centered_pole_grid, centered_pole, default_cuts(centered_pole_grid, centered_pole))
    up = assemble_ab(centered_pole_grid, centered_pole, cuts_in_direction(centered_pole_grid, centered_pole, CutDirection.UP))
    before_down = down.matrix.toarray()
    before_up = up.matrix.toarray()
    nnz = (down.matrix.nnz, up.matrix.nnz)
    for _ in range(2):
        assert gauge_equivalent(down, up).equivalent
    assert (down.matrix.nnz, up.matrix.nnz) == nnz
    assert np.array_equal(down.matrix.toarray(), before_down)
    assert np.array_equal(up.matrix.toarray(), before_up)
    assert np.allclose(np.diag(before_down), 4 / centered_pole_grid.h ** 2)


def test_spectrum_does_not_depend_on_the_cuts(centered_pole_grid: Grid):
    poles = snap_poles(centered_pole_grid, [(0.3, 0.4), (0.7, 0.6)])
    choices = [(CutDirection.DOWN, CutDirection.DOWN), (CutDirection.UP, CutDirection.LEFT),
               (CutDirection.RIGHT, CutDirection.UP)]
    operators = [assemble_ab(centered_pole_grid, poles, cuts_in_direction(centered_pole_grid, poles, list(directions)))
                 for directions in choices]
    for other in operators[1:]:
        assert gauge_equivalent(operators[0], other).equivalent
    spectra = np.array([smallest_eigenpairs(operator, 6).eigenvalues for operator in operators])
    spread = (spectra.max(axis=0) - spectra.min(axis=0)) / spectra.min(axis=0)
    assert spread.max() < 1e-8
    assert spectra[0, 0] > smallest_eigenpairs(assemble_laplacian(centered_pole_grid), 1).eigenvalues[0]


def test_flux_on_random_pole_configurations(centered_pole_grid: Grid):
    rng = np.random.default_rng(2024)
    full = centered_pole_grid.full_plaquettes
    candidates = np.argwhere(full)
    directions = list(CutDirection)
    for _ in range(100):
        ell = int(rng.integers(1, 5))
        chosen = candidates[rng.choice(len(candidates), size=ell, replace=False)]
        centers = [centered_pole_grid.plaquette_center(int(i), int(j)) for j, i in chosen]
        poles = snap_poles(centered_pole_grid, centers)
        cuts = cuts_in_direction(centered_pole_grid, poles, [directions[d] for d in rng.integers(0, 4, ell)])
        gauge = GaugeField.from_cuts(centered_pole_grid, cuts)
        expected = np.where(full, 1, 0)
        for i, j in poles.plaquettes:
            expected[j, i] = -1
        assert np.array_equal(gauge.plaquette_products(centered_pole_grid), expected)
        check_flux(centered_pole_grid, gauge, poles)


def test_different_grids_have_different_structure(tiny_grid: Grid):
    other = build_grid(DomainSpec.unit_square(), 1 / 4)
    with pytest.raises(DifferentStructure):
        gauge_equivalent(assemble_laplacian(tiny_grid), assemble_laplacian(other))


def test_write_coo(tmp_path, tiny_grid: Grid):
    path = tmp_path / "operator.coo"
    assemble_laplacian(tiny_grid).write_coo(path)
    lines = path.read_text().splitlines()
    assert len(lines) == 4 + 2 * 4
    assert lines[0].split()[:2] == ["0", "0"]
    assert float(lines[0].split()[2]) == pytest.approx(36.0)
    rows = [(int(line.split()[0]), int(line.split()[1])) for line in lines]
    assert rows == sorted(rows)
