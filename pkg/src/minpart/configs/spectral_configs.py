from minpart.configs.base_configs import BaseConfigs, ConfigArgument, check_positivity, parse_points
from minpart.numerics.partition_analysis import DEFAULT_ZERO_TOL
from minpart.numerics.geometry import build_grid, snap_poles
from minpart.data_structs.grid import Grid, PoleConfig
from minpart.data_structs.domain import Point
from minpart.errors import ConfigError

from typing import Any, override

class SpectralConfigs(BaseConfigs):
    """``BaseConfigs`` specialized for spectra, nodal partitions and the hexagonal diagnostic.

    The arguments are the ones of ``BaseConfigs`` plus:
    - ``k``: the number of eigenpairs (``solve``) or the index of the analysed eigenfunction (``partition``).
    - ``pole_points``: the poles, snapped to plaquette centers.
    - ``richardson``: whether to extrapolate the spectrum from ``h`` and ``h/2``.
    - ``dump_matrix``: whether to write the operator in coordinate format.
    - ``zero_tol``: the relative threshold under which a value counts as zero.
    - ``show``: whether to print the partition to the terminal.
    - ``lk_values``: ``𝔏_1, 𝔏_2, …`` for the hexagonal diagnostic.
    - ``nu_values``: the matching odd critical point counts, optional.
    """

    def __init__(self) -> None:
        super().__init__()
        self.__k: ConfigArgument[int] = ConfigArgument("k", 5)
        self.__pole_points: ConfigArgument[list[Point]] = ConfigArgument("Poles", [])
        self.__richardson: ConfigArgument[bool] = ConfigArgument("Richardson extrapolation", False)
        self.__dump_matrix: ConfigArgument[bool] = ConfigArgument("Matrix dump", False)
        self.__zero_tol: ConfigArgument[float] = ConfigArgument("Zero tolerance", DEFAULT_ZERO_TOL)
        self.__show: ConfigArgument[bool] = ConfigArgument("Show", False)
        self.__lk_values: ConfigArgument[list[float]] = ConfigArgument("Minimal energies", [])
        self.__nu_values: ConfigArgument[list[int]] = ConfigArgument("Odd critical point counts", [])

    @property
    def k(self) -> int:
        return self.__k.value

    @k.setter
    def k(self, value: int) -> None:
        self.__k.set_and_freeze(value)

    @property
    def pole_points(self) -> list[Point]:
        return self.__pole_points.value

    @pole_points.setter
    def pole_points(self, points: list[Point]) -> None:
        self.__pole_points.set_and_freeze(points)

    @property
    def richardson(self) -> bool:
        return self.__richardson.value

    @richardson.setter
    def richardson(self, value: bool) -> None:
        self.__richardson.set_and_freeze(value)

    @property
    def dump_matrix(self) -> bool:
        return self.__dump_matrix.value

    @dump_matrix.setter
    def dump_matrix(self, value: bool) -> None:
        self.__dump_matrix.set_and_freeze(value)

    @property
    def zero_tol(self) -> float:
        return self.__zero_tol.value

    @zero_tol.setter
    def zero_tol(self, value: float) -> None:
        self.__zero_tol.set_and_freeze(value)

    @property
    def show(self) -> bool:
        return self.__show.value

    @show.setter
    def show(self, value: bool) -> None:
        self.__show.set_and_freeze(value)

    @property
    def lk_values(self) -> list[float]:
        return self.__lk_values.value

    @lk_values.setter
    def lk_values(self, values: list[float]) -> None:
        self.__lk_values.set_and_freeze(values)

    @property
    def nu_values(self) -> list[int]:
        return self.__nu_values.value

    @nu_values.setter
    def nu_values(self, values: list[int]) -> None:
        self.__nu_values.set_and_freeze(values)

    @override
    def _process_entry_helper(self, key: str, value: Any) -> bool:
        match key, value:
            case "k", int():
                self.__k.set_if_not_frozen(value)
            case "poles", list():
                self.__pole_points.set_if_not_frozen(parse_points(value))
            case "richardson", bool():
                self.__richardson.set_if_not_frozen(value)
            case "dump_matrix", bool():
                self.__dump_matrix.set_if_not_frozen(value)
            case "zero_tol", int() | float():
                self.__zero_tol.set_if_not_frozen(value)
            case "show", bool():
                self.__show.set_if_not_frozen(value)
            case "lk", list():
                self.__lk_values.set_if_not_frozen([float(item) for item in value])
            case "nu", list():
                self.__nu_values.set_if_not_frozen([int(item) for item in value])
            case _:
                return False
        return True

    @override
    def _check_helper(self) -> None:
        check_positivity(self.k, "k")
        if not 0 < self.zero_tol < 0.1:
            raise ConfigError(f"Zero tolerance should be in (0, 0.1).\n"
                              + f"It was {self.zero_tol}")
        for value in self.lk_values:
            check_positivity(value, "Minimal energy")
        if self.nu_values and len(self.nu_values) != len(self.lk_values):
            raise ConfigError(f"One odd critical point count per minimal energy is needed.\n"
                              + f"Got {len(self.nu_values)} counts for {len(self.lk_values)} energies")

    @override
    def _create_helper(self) -> None:
        self.grid: Grid = build_grid(self.domain, self.h)
        self.poles: PoleConfig = snap_poles(self.grid, self.pole_points)

    @override
    def _to_dict_helper(self) -> dict[str, Any]:
        return {
            "k": self.k,
            "poles": [list(point) for point in self.pole_points],
            "richardson": self.richardson,
            "dump_matrix": self.dump_matrix,
            "zero_tol": self.zero_tol,
            "lk": list(self.lk_values),
            "nu": list(self.nu_values)
        }
