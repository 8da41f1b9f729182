"""Exception hierarchy of the laboratory.

The command line maps the four roots to exit codes:
- ``ConfigError``, ``GeometryError`` and the other ``INPUT_ERRORS``: 2
- ``SolverError``: 3
- ``InvariantViolation``: 4
"""


class ConfigError(ValueError):
    """An argument or a configuration entry is invalid."""


class GeometryError(ValueError):
    """A domain, a grid or a pole configuration is invalid."""


class EmptyGrid(GeometryError):
    """The grid has no interior point."""


class BadPolygon(GeometryError):
    """The vertex list does not describe a simple polygon of positive area."""


class PoleOutsideDomain(GeometryError):
    """A pole does not lie in a fully interior plaquette."""


class SideTooLarge(GeometryError):
    """The tiling square is larger than the domain diameter."""


class DifferentStructure(ValueError):
    """Two operators do not share the same sparsity pattern."""


class EpsOutOfRange(ValueError):
    """``ε`` is outside the open admissibility interval ``(0, 1 - 4/j²)``."""


class InadmissibleEps(EpsOutOfRange):
    """``ε`` given to a bound evaluation is not admissible."""


class AllZero(ValueError):
    """The vector to analyse vanishes identically."""


class EmptyDomain(ValueError):
    """The requested domain of a partition has no point."""


class InvalidPoleCount(ValueError):
    """The number of poles violates ``0 <= ℓ <= 2k - 4``."""


class ThresholdNotFound(LookupError):
    """No threshold was found below the search cap."""


class SolverError(RuntimeError):
    """A numerical solve failed."""


class NoConvergence(SolverError):
    """The eigensolver did not reach the requested tolerance."""

    def __init__(self, iterations: int, best_residual: float, message: str = "") -> None:
        self.iterations: int = iterations
        self.best_residual: float = best_residual
        super().__init__(f"Eigensolver did not converge after {iterations} iterations.\n"
                         + f"Best relative residual was {best_residual:.3e}"
                         + (f"\n{message}" if message else ""))


class DimensionTooSmall(SolverError):
    """More eigenpairs were requested than the operator dimension."""


class FactorizationBreakdown(SolverError):
    """The shifted factorization met a (numerically) zero pivot."""

    def __init__(self, shift: float, message: str = "") -> None:
        self.shift: float = shift
        super().__init__(f"Factorization of A - λI broke down at λ = {shift!r}"
                         + (f"\n{message}" if message else ""))


class InvariantViolation(RuntimeError):
    """A checked mathematical invariant failed."""


class InconsistentCuts(InvariantViolation):
    """The edge signs do not carry flux π exactly at the pole plaquettes."""


class SuperadditivityViolation(InvariantViolation):
    """The tiled counting sum exceeds the domain count beyond the slack."""


class BudgetExhaustedWithoutImprovement(UserWarning):
    """The pole search spent its budget without accepting any move."""


INPUT_ERRORS: tuple[type[Exception], ...] = (ConfigError, GeometryError, DifferentStructure, EpsOutOfRange, AllZero,
                                             EmptyDomain, InvalidPoleCount, ThresholdNotFound)
"""Errors caused by the arguments of a run rather than by the code."""
