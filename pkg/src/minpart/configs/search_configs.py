from minpart.configs.base_configs import BaseConfigs, ConfigArgument, check_positivity
from minpart.numerics.partition_analysis import DEFAULT_ZERO_TOL
from minpart.functors.objective import LambdaKObjective
from minpart.numerics.geometry import build_grid
from minpart.errors import ConfigError, InvalidPoleCount
from minpart.data_structs.grid import Grid

from typing import Any, override

def check_pole_count(k: int, ell: int) -> None:
    """Raise ``InvalidPoleCount`` unless ``0 <= ℓ <= 2k - 4`` (``ℓ = 0`` is always allowed)."""
    if ell < 0 or (ell > 0 and ell > 2 * k - 4):
        raise InvalidPoleCount(f"The number of poles should satisfy 0 <= ℓ <= 2k - 4.\n"
                               + f"It was ℓ={ell} for k={k}")


class SearchConfigs(BaseConfigs):
    """``BaseConfigs`` specialized for pole searches.

    The arguments are the ones of ``BaseConfigs`` plus:
    - ``k``: the index of the maximized eigenvalue.
    - ``ell``: the number of poles.
    - ``budget``: the maximum number of eigensolves.
    - ``restarts``: the number of quasi-random starting configurations.
    - ``initial_step``: the first poll step, an eighth of the domain diameter by default.
    - ``zero_tol``: the relative threshold used when extracting the final partition.
    - ``show``: whether to print the final partition to the terminal.
    """

    def __init__(self) -> None:
        super().__init__()
        self.__k: ConfigArgument[int] = ConfigArgument("k", 2)
        self.__ell: ConfigArgument[int] = ConfigArgument("Number of poles", 0)
        self.__budget: ConfigArgument[int] = ConfigArgument("Budget", 200)
        self.__restarts: ConfigArgument[int] = ConfigArgument("Number of restarts", 4)
        self.__initial_step: ConfigArgument[float | None] = ConfigArgument("Initial step", None, float)
        self.__zero_tol: ConfigArgument[float] = ConfigArgument("Zero tolerance", DEFAULT_ZERO_TOL)
        self.__show: ConfigArgument[bool] = ConfigArgument("Show", False)

    @property
    def k(self) -> int:
        return self.__k.value

    @k.setter
    def k(self, value: int) -> None:
        self.__k.set_and_freeze(value)

    @property
    def ell(self) -> int:
        return self.__ell.value

    @ell.setter
    def ell(self, value: int) -> None:
        self.__ell.set_and_freeze(value)

    @property
    def budget(self) -> int:
        return self.__budget.value

    @budget.setter
    def budget(self, value: int) -> None:
        self.__budget.set_and_freeze(value)

    @property
    def restarts(self) -> int:
        return self.__restarts.value

    @restarts.setter
    def restarts(self, value: int) -> None:
        self.__restarts.set_and_freeze(value)

    @property
    def initial_step(self) -> float:
        if self.__initial_step.value is None:
            return self.domain.diameter / 8
        return self.__initial_step.value

    @initial_step.setter
    def initial_step(self, value: float) -> None:
        self.__initial_step.set_and_freeze(value)

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

    @override
    def _process_entry_helper(self, key: str, value: Any) -> bool:
        match key, value:
            case "k", int():
                self.__k.set_if_not_frozen(value)
            case "poles" | "ell", int():
                self.__ell.set_if_not_frozen(value)
            case "budget", int():
                self.__budget.set_if_not_frozen(value)
            case "restarts", int():
                self.__restarts.set_if_not_frozen(value)
            case "initial_step", int() | float() | None:
                self.__initial_step.set_if_not_frozen(value)
            case "zero_tol", int() | float():
                self.__zero_tol.set_if_not_frozen(value)
            case "show", bool():
                self.__show.set_if_not_frozen(value)
            case _:
                return False
        return True

    @override
    def _check_helper(self) -> None:
        check_positivity(self.k, "k")
        check_pole_count(self.k, self.ell)
        check_positivity(self.budget, "Budget")
        check_positivity(self.restarts, "Number of restarts")
        check_positivity(self.initial_step, "Initial step")
        if not 0 < self.zero_tol < 0.1:
            raise ConfigError(f"Zero tolerance should be in (0, 0.1).\n"
                              + f"It was {self.zero_tol}")

    @override
    def _create_helper(self) -> None:
        self.grid: Grid = build_grid(self.domain, self.h)
        self.objective: LambdaKObjective = LambdaKObjective(self.grid, self.k, self.tol, self.seed, self.zero_tol)

    @override
    def _to_dict_helper(self) -> dict[str, Any]:
        return {
            "k": self.k,
            "poles": self.ell,
            "budget": self.budget,
            "restarts": self.restarts,
            "initial_step": self.initial_step,
            "zero_tol": self.zero_tol
        }
