from minpart.numerics.eigensolver import DEFAULT_SEED, DEFAULT_TOL
from minpart.data_structs.domain import DomainSpec, Point
from minpart.errors import ConfigError

from collections.abc import Callable
from abc import ABC, abstractmethod
from typing import Any
import logging
import json
import math
import os

logger = logging.getLogger(__name__)

THREADS_VARIABLE: str = "MINPART_THREADS"

class ConfigArgument[T]:
    """A generic argument.

    Used to impose a priority to how arguments are set:
      User > Configuration File > Default

    It should be initialized with the default value, and with ``value_type`` when the default is ``None``.

    It should be set through ``set_if_not_frozen`` with the value given by the configuration file.

    It should be set through ``set_and_freeze`` with the value given by the user.

    Integers are accepted for float arguments; a value of another type raises ``ConfigError``.
    """

    def __init__(self, name: str, value: T, value_type: type | None = None) -> None:
        """Set the initial value to ``value``."""
        self.name: str = name
        self.value: T = value
        self.frozen: bool = False
        self.__optional: bool = value is None
        self.__value_type: type = value_type if value_type is not None else type(value)

    def set_and_freeze(self, value: T) -> None:
        """Set the argument to ``value`` and freeze it."""
        self.value = self.__coerce(value)
        self.frozen = True

    def set_if_not_frozen(self, value: T) -> None:
        """If the argument is not frozen set it to ``value``."""
        if not self.frozen:
            self.value = self.__coerce(value)

    def __coerce(self, value: Any) -> Any:
        if value is None and self.__optional:
            return value
        if isinstance(value, bool) and self.__value_type is not bool:
            raise ConfigError(f"{self.name} should be a {self.__value_type.__name__}.\n"
                              + f"It was {value!r}")
        if self.__value_type is float and isinstance(value, int):
            return float(value)
        if not isinstance(value, self.__value_type):
            raise ConfigError(f"{self.name} should be a {self.__value_type.__name__}.\n"
                              + f"It was {value!r} ({type(value).__name__})")
        return value


def default_processes() -> int:
    """Return ``MINPART_THREADS`` if set, else the number of available cores."""
    text: str | None = os.environ.get(THREADS_VARIABLE)
    if text is None or not text.strip():
        return max(1, os.cpu_count() or 1)
    try:
        return int(text)
    except ValueError as error:
        raise ConfigError(f"{THREADS_VARIABLE} should be an integer.\n"
                          + f"It was {text!r}") from error


def parse_points(value: Any) -> list[Point]:
    """Read a list of ``[x, y]`` pairs."""
    if not isinstance(value, list | tuple):
        raise ConfigError(f"Points should be a list of [x, y] pairs.\n"
                          + f"It was {value!r}")
    points: list[Point] = []
    for item in value:
        match item:
            case [int() | float() as x, int() | float() as y] if not isinstance(x, bool) and not isinstance(y, bool):
                points.append((float(x), float(y)))
            case _:
                raise ConfigError(f"A point should be a pair of numbers.\n"
                                  + f"It was {item!r}")
    return points


def reject_entry(configs: "BaseConfigs", key: str, value: Any) -> None:
    raise ConfigError(f"Unknown configuration key or wrong value type.\n"
                      + f"It was {key!r}: {value!r}")


class BaseConfigs(ABC):
    """Configuration base class.

    The children should only implement the abstract methods:
    - ``_process_entry_helper``
    - ``_check_helper``
    - ``_create_helper``
    - ``_to_dict_helper``

    and provide properties for their specific ``ConfigArgument``s.

    The class also provides an ``entry_processing_extension`` member that will be used to
    read unrecognized configuration entries. It is called with the configuration object itself,
    the casefolded key and the value; by default it raises ``ConfigError``.

    The configuration file is a JSON object. The arguments are:
    - ``configs_file_path``: the path to the configuration file.
    - ``domain``: the ``DomainSpec`` of the computation.
    - ``h``: the grid spacing.
    - ``tol``: the eigensolver relative tolerance.
    - ``seed``: the seed of every random choice.
    - ``processes``: the number of worker processes, ``MINPART_THREADS`` or the number of cores by default.
    - ``out_dir``: the directory where the outputs are written.
    """

    def __init__(self) -> None:
        """Initialize the configuration with the default arguments."""
        self.__configs_file_path: ConfigArgument[str] = ConfigArgument("Configuration file", "")
        self.__domain: ConfigArgument[DomainSpec] = ConfigArgument("Domain", DomainSpec.unit_square())
        self.__h: ConfigArgument[float] = ConfigArgument("Grid spacing", 1 / 64)
        self.__tol: ConfigArgument[float] = ConfigArgument("Solver tolerance", DEFAULT_TOL)
        self.__seed: ConfigArgument[int] = ConfigArgument("Seed", DEFAULT_SEED)
        self.__processes: ConfigArgument[int | None] = ConfigArgument("Number of processes", None, int)
        self.__out_dir: ConfigArgument[str] = ConfigArgument("Output directory", "out")
        self.entry_processing_extension: Callable[[BaseConfigs, str, Any], None] = reject_entry

    @property
    def configs_file_path(self) -> str:
        return self.__configs_file_path.value

    @configs_file_path.setter
    def configs_file_path(self, path: str) -> None:
        self.__configs_file_path.set_and_freeze(path)

    @property
    def domain(self) -> DomainSpec:
        return self.__domain.value

    @domain.setter
    def domain(self, domain: DomainSpec) -> None:
        self.__domain.set_and_freeze(domain)

    @property
    def h(self) -> float:
        return self.__h.value

    @h.setter
    def h(self, h: float) -> None:
        self.__h.set_and_freeze(h)

    @property
    def tol(self) -> float:
        return self.__tol.value

    @tol.setter
    def tol(self, tol: float) -> None:
        self.__tol.set_and_freeze(tol)

    @property
    def seed(self) -> int:
        return self.__seed.value

    @seed.setter
    def seed(self, seed: int) -> None:
        self.__seed.set_and_freeze(seed)

    @property
    def processes(self) -> int:
        """The number of worker processes; resolved from the environment if nobody set it."""
        if self.__processes.value is None:
            return default_processes()
        return self.__processes.value

    @processes.setter
    def processes(self, processes: int) -> None:
        self.__processes.set_and_freeze(processes)

    @property
    def out_dir(self) -> str:
        return self.__out_dir.value

    @out_dir.setter
    def out_dir(self, out_dir: str) -> None:
        self.__out_dir.set_and_freeze(out_dir)

    def validate(self) -> None:
        """Check the arguments and create the necessary objects."""
        self.__apply_file()
        self.__check()
        self.__create()

    def to_dict(self) -> dict[str, Any]:
        """Return every argument, defaults included, as plain JSON values."""
        return {
            "domain": self.domain.to_dict(),
            "h": self.h,
            "tol": self.tol,
            "seed": self.seed,
            "out": self.out_dir
        } | self._to_dict_helper()

    def __apply_file(self) -> None:
        """Read the configuration file arguments."""
        if not self.configs_file_path:
            return
        try:
            with open(self.configs_file_path) as f:
                data: Any = json.load(f)
        except (OSError, json.JSONDecodeError) as error:
            raise ConfigError(f"Configuration file could not be read.\n"
                              + f"Path was {self.configs_file_path}") from error
        if not isinstance(data, dict):
            raise ConfigError(f"Configuration file should hold a JSON object.\n"
                              + f"Path was {self.configs_file_path}")
        for key, value in data.items():
            self.__process_entry(str(key).casefold(), value)

    def __process_entry(self, key: str, value: Any) -> None:
        """Read the entry ``key: value``, setting the arguments accordingly."""
        if key.startswith("#"):
            return
        has_match: bool = True
        match key, value:
            case "domain", str(text):
                self.__domain.set_if_not_frozen(DomainSpec.parse(text))
            case "domain", dict(data):
                self.__domain.set_if_not_frozen(DomainSpec.from_dict(data))
            case "h", int() | float():
                self.__h.set_if_not_frozen(value)
            case "tol", int() | float():
                self.__tol.set_if_not_frozen(value)
            case "seed", int():
                self.__seed.set_if_not_frozen(value)
            case "processes", int():
                self.__processes.set_if_not_frozen(value)
            case "out", str():
                self.__out_dir.set_if_not_frozen(value)
            case _:
                has_match = False
        if not has_match:
            has_match = self._process_entry_helper(key, value)
        if not has_match:
            self.entry_processing_extension(self, key, value)

    @abstractmethod
    def _process_entry_helper(self, key: str, value: Any) -> bool:
        """Helper method to let subclasses read configuration entries not recognized by the base class.

        ``key`` is casefolded.

        The implementation should return ``True`` if it was able to recognize the entry, otherwise ``False``.
        """
        ...

    def __check(self) -> None:
        """Check if the arguments are valid."""
        check_positivity(self.h, "Grid spacing")
        check_positivity(self.tol, "Solver tolerance")
        check_non_negativity(self.seed, "Seed")
        check_positivity(self.processes, "Number of processes")
        self._check_helper()

    @abstractmethod
    def _check_helper(self) -> None:
        """Helper method to let subclasses do their checks."""
        ...

    def __create(self) -> None:
        """Create the necessary objects."""
        self._create_helper()

    @abstractmethod
    def _create_helper(self) -> None:
        """Helper method to let subclasses create their specific objects."""
        ...

    @abstractmethod
    def _to_dict_helper(self) -> dict[str, Any]:
        """Helper method to let subclasses add their arguments to ``to_dict``."""
        ...


def check_positivity(value: int | float, name: str) -> None:
    """Check that ``value`` is positive and finite, otherwise raise ``ConfigError``."""
    if not (value > 0 and math.isfinite(value)):
        raise ConfigError(f"{name} should be > 0.\n"
                          + f"It was {value}")


def check_non_negativity(value: int | float, name: str) -> None:
    """Check that ``value`` is not negative, otherwise raise ``ConfigError``."""
    if not (value >= 0 and math.isfinite(value)):
        raise ConfigError(f"{name} should be >= 0.\n"
                          + f"It was {value}")
