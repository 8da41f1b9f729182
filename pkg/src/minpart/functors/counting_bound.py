from abc import ABC, abstractmethod
from typing import override
import numpy as np
import math

class CountingBound(ABC):
    """Interface for the universal lower bounds ``n(t) > t²/(4π) - b·t + c`` of the unit square counting function.

    ``b`` is the linear coefficient, ``c`` the constant one.
    """

    @property
    @abstractmethod
    def name(self) -> str:
        ...

    @property
    @abstractmethod
    def linear_coefficient(self) -> float:
        ...

    @property
    @abstractmethod
    def constant_coefficient(self) -> float:
        ...

    def __call__(self, t: float | np.ndarray) -> float | np.ndarray:
        """Return the value of the bound at ``t``."""
        return t * t / (4 * math.pi) - self.linear_coefficient * t + self.constant_coefficient

    def t_of_eps(self, eps: float) -> float:
        """Return ``max(2, 4π·b/ε)``, past which the bound exceeds ``(1 - ε)·t²/(4π)``."""
        return max(2.0, 4 * math.pi * self.linear_coefficient / eps)

    def sharp_t_of_eps(self, eps: float) -> float:
        """Return the smallest ``t >= 2`` past which ``ε·t²/(4π) - b·t + c >= 0``."""
        b: float = self.linear_coefficient
        discriminant: float = b * b - eps * self.constant_coefficient / math.pi
        if discriminant < 0:
            return 2.0
        return max(2.0, 2 * math.pi * (b + math.sqrt(discriminant)) / eps)

class PrintedCountingBound(CountingBound):
    """The bound as printed, ``t²/(4π) - 2t/π² + 1/π²``. It fails for small ``t``."""

    @property
    @override
    def name(self) -> str:
        return "paper"

    @property
    @override
    def linear_coefficient(self) -> float:
        return 2 / math.pi ** 2

    @property
    @override
    def constant_coefficient(self) -> float:
        return 1 / math.pi ** 2

class CorrectedCountingBound(CountingBound):
    """The lattice count of the quarter disk of radius ``t/π``, ``t²/(4π) - 2t/π + 1``.

    It holds for ``t >= π·√2``; on ``[2, 4 - √(16 - 4π))`` it is positive while ``n(t) = 0``.
    """

    @property
    @override
    def name(self) -> str:
        return "corrected"

    @property
    @override
    def linear_coefficient(self) -> float:
        return 2 / math.pi

    @property
    @override
    def constant_coefficient(self) -> float:
        return 1.0


def counting_bound_from_name(name: str) -> CountingBound:
    match name:
        case "paper":
            return PrintedCountingBound()
        case "corrected":
            return CorrectedCountingBound()
        case _:
            raise ValueError(f"Unknown counting bound.\n"
                             + f"It was {name!r}, expected 'paper' or 'corrected'")
