from minpart.configs.base_configs import BaseConfigs, ConfigArgument, check_positivity
from minpart.numerics.weyl_counting import t_grid
from minpart.errors import ConfigError

from typing import Any, override
import numpy as np

class WeylConfigs(BaseConfigs):
    """``BaseConfigs`` specialized for the counting scans and the constants ledger.

    The arguments are the ones of ``BaseConfigs`` plus:
    - ``t_min``, ``t_max``, ``step``: the scanned values of ``t``.
    - ``eps``: if set, the smallest ``t`` of the counting inequality for this ``ε`` is also searched.
    - ``wq_t_max``: the cap of that search.
    - ``j_squared``: a Faber-Krahn type constant replacing ``j²`` in the ledger.
    """

    def __init__(self) -> None:
        super().__init__()
        self.__t_min: ConfigArgument[float] = ConfigArgument("Smallest t", 2.0)
        self.__t_max: ConfigArgument[float] = ConfigArgument("Largest t", 50.0)
        self.__step: ConfigArgument[float] = ConfigArgument("Step of t", 0.1)
        self.__eps: ConfigArgument[float | None] = ConfigArgument("ε", None, float)
        self.__wq_t_max: ConfigArgument[float] = ConfigArgument("Cap of the threshold search", 100.0)
        self.__j_squared: ConfigArgument[float | None] = ConfigArgument("Faber-Krahn constant", None, float)

    @property
    def t_min(self) -> float:
        return self.__t_min.value

    @t_min.setter
    def t_min(self, value: float) -> None:
        self.__t_min.set_and_freeze(value)

    @property
    def t_max(self) -> float:
        return self.__t_max.value

    @t_max.setter
    def t_max(self, value: float) -> None:
        self.__t_max.set_and_freeze(value)

    @property
    def step(self) -> float:
        return self.__step.value

    @step.setter
    def step(self, value: float) -> None:
        self.__step.set_and_freeze(value)

    @property
    def eps(self) -> float | None:
        return self.__eps.value

    @eps.setter
    def eps(self, value: float | None) -> None:
        self.__eps.set_and_freeze(value)

    @property
    def wq_t_max(self) -> float:
        return self.__wq_t_max.value

    @wq_t_max.setter
    def wq_t_max(self, value: float) -> None:
        self.__wq_t_max.set_and_freeze(value)

    @property
    def j_squared(self) -> float | None:
        return self.__j_squared.value

    @j_squared.setter
    def j_squared(self, value: float | None) -> None:
        self.__j_squared.set_and_freeze(value)

    @override
    def _process_entry_helper(self, key: str, value: Any) -> bool:
        match key, value:
            case "t_min", int() | float():
                self.__t_min.set_if_not_frozen(value)
            case "t_max", int() | float():
                self.__t_max.set_if_not_frozen(value)
            case "step", int() | float():
                self.__step.set_if_not_frozen(value)
            case "eps", int() | float() | None:
                self.__eps.set_if_not_frozen(value)
            case "wq_t_max", int() | float():
                self.__wq_t_max.set_if_not_frozen(value)
            case "j_squared", int() | float() | None:
                self.__j_squared.set_if_not_frozen(value)
            case _:
                return False
        return True

    @override
    def _check_helper(self) -> None:
        if not 2 <= self.t_min <= self.t_max:
            raise ConfigError(f"The scan needs 2 <= t_min <= t_max.\n"
                              + f"It was t_min={self.t_min}, t_max={self.t_max}")
        check_positivity(self.step, "Step of t")
        check_positivity(self.wq_t_max, "Cap of the threshold search")
        if self.eps is not None and not 0 < self.eps < 1:
            raise ConfigError(f"ε should be in (0, 1).\n"
                              + f"It was {self.eps}")
        if self.j_squared is not None and not self.j_squared > 4:
            raise ConfigError(f"Faber-Krahn constant should be > 4.\n"
                              + f"It was {self.j_squared}")

    @override
    def _create_helper(self) -> None:
        self.t_values: np.ndarray = t_grid(self.t_min, self.t_max, self.step)

    @override
    def _to_dict_helper(self) -> dict[str, Any]:
        return {
            "t_min": self.t_min,
            "t_max": self.t_max,
            "step": self.step,
            "eps": self.eps,
            "wq_t_max": self.wq_t_max,
            "j_squared": self.j_squared
        }
