from minpart.functors.objective import assess_configuration
from minpart.data_structs.grid import Grid, PoleConfig
from minpart.data_structs.search import Evaluation

from dataclasses import dataclass

@dataclass
class ProcessSharedData:
    """Struct containing all the data a worker process needs to evaluate pole configurations.

    It contains:
    - ``grid``: the ``Grid`` of the search.
    - ``k``: the index of the maximized eigenvalue.
    - ``tol``: the eigensolver tolerance.
    - ``seed``: the eigensolver seed.
    - ``zero_tol``: the relative threshold under which a value counts as zero when counting nodal domains.
    """
    grid: Grid
    k: int
    tol: float
    seed: int
    zero_tol: float

_shared_data: ProcessSharedData | None = None

def process_init(shared_data: ProcessSharedData) -> None:
    """Initializer of a worker process: keep ``shared_data`` for the following evaluations."""
    global _shared_data
    _shared_data = shared_data


def process_main(plaquettes: tuple[tuple[int, int], ...]) -> Evaluation:
    """Return ``λ_k`` and the nodal domain count for the poles at the centers of ``plaquettes``."""
    if _shared_data is None:
        raise RuntimeError("Worker process was not initialized")
    grid: Grid = _shared_data.grid
    poles: PoleConfig = PoleConfig(plaquettes, tuple(grid.plaquette_center(i, j) for i, j in plaquettes))
    return assess_configuration(grid, poles, _shared_data.k, _shared_data.tol, _shared_data.seed, _shared_data.zero_tol)
