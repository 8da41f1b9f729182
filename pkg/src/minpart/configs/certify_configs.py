from minpart.functors.counting_bound import CountingBound, counting_bound_from_name
from minpart.configs.base_configs import BaseConfigs, ConfigArgument, check_positivity, parse_points
from minpart.data_structs.domain import Point
from minpart.errors import ConfigError

from typing import Any, override

class CertifyConfigs(BaseConfigs):
    """``BaseConfigs`` specialized for the finite-k certificate.

    The arguments are the ones of ``BaseConfigs`` plus:
    - ``k``: the number of domains.
    - ``pole_points``: the odd critical points avoided by the tiling.
    - ``lk``: the partition energy, ``λ_k`` of the AB operator by default.
    - ``eps``: ``ε``, ``ε_max`` by default.
    - ``t``: the spectral parameter, ``t(ε)`` of the counting bound by default.
    - ``bound``: ``"paper"`` or ``"corrected"``, the counting bound used.
    """

    def __init__(self) -> None:
        super().__init__()
        self.__k: ConfigArgument[int] = ConfigArgument("k", 10)
        self.__pole_points: ConfigArgument[list[Point]] = ConfigArgument("Poles", [])
        self.__lk: ConfigArgument[float | None] = ConfigArgument("Minimal energy", None, float)
        self.__eps: ConfigArgument[float | None] = ConfigArgument("ε", None, float)
        self.__t: ConfigArgument[float | None] = ConfigArgument("Spectral parameter", None, float)
        self.__bound: ConfigArgument[str] = ConfigArgument("Counting bound", "paper")

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
    def lk(self) -> float | None:
        return self.__lk.value

    @lk.setter
    def lk(self, value: float | None) -> None:
        self.__lk.set_and_freeze(value)

    @property
    def eps(self) -> float | None:
        return self.__eps.value

    @eps.setter
    def eps(self, value: float | None) -> None:
        self.__eps.set_and_freeze(value)

    @property
    def t(self) -> float | None:
        return self.__t.value

    @t.setter
    def t(self, value: float | None) -> None:
        self.__t.set_and_freeze(value)

    @property
    def bound(self) -> str:
        return self.__bound.value

    @bound.setter
    def bound(self, value: str) -> None:
        self.__bound.set_and_freeze(value)

    @override
    def _process_entry_helper(self, key: str, value: Any) -> bool:
        match key, value:
            case "k", int():
                self.__k.set_if_not_frozen(value)
            case "poles", list():
                self.__pole_points.set_if_not_frozen(parse_points(value))
            case "lk", int() | float() | None:
                self.__lk.set_if_not_frozen(value)
            case "eps", int() | float() | None:
                self.__eps.set_if_not_frozen(value)
            case "t", int() | float() | None:
                self.__t.set_if_not_frozen(value)
            case "bound", str():
                self.__bound.set_if_not_frozen(value.casefold())
            case _:
                return False
        return True

    @override
    def _check_helper(self) -> None:
        check_positivity(self.k, "k")
        if self.lk is not None:
            check_positivity(self.lk, "Minimal energy")
        if self.t is not None and not self.t >= 1:
            raise ConfigError(f"Spectral parameter should be >= 1.\n"
                              + f"It was {self.t}")

    @override
    def _create_helper(self) -> None:
        try:
            self.counting_bound: CountingBound = counting_bound_from_name(self.bound)
        except ValueError as error:
            raise ConfigError(str(error)) from error

    @override
    def _to_dict_helper(self) -> dict[str, Any]:
        return {
            "k": self.k,
            "poles": [list(point) for point in self.pole_points],
            "lk": self.lk,
            "eps": self.eps,
            "t": self.t,
            "bound": self.bound
        }
