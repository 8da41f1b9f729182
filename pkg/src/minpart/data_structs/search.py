from minpart.numerics.partition_analysis import EulerVerdict, NodalPartition
from minpart.numerics.eigensolver import Spectrum
from minpart.data_structs.grid import PoleConfig
from minpart.data_structs.domain import Point

from dataclasses import asdict, dataclass
from typing import Any
import math

EQUIPARTITION_TOLERANCE: float = 0.02

@dataclass(frozen=True)
class Evaluation:
    """``λ_k`` at one pole configuration and the number of nodal domains found in its eigenspace."""
    value: float
    domains: int

    def feasible(self, k: int) -> bool:
        return self.domains == k

    def rank(self, k: int) -> tuple[int, float]:
        """Sort key: a domain count closer to ``k`` first, then a larger ``λ_k``."""
        return -abs(k - self.domains), self.value

@dataclass
class SearchData:
    """Struct containing the state of a pole search after a start or an accepted poll step.

    It contains:
    - ``restart``: the index of the current start, from 1.
    - ``iteration``: the number of moves accepted since the start.
    - ``evaluations``: the number of eigensolves done so far.
    - ``step``: the current poll step.
    - ``value``: ``λ_k`` at the current configuration.
    - ``domains``: the number of nodal domains found in the eigenspace of ``λ_k`` at the current configuration.
    - ``best_value``: the best ``λ_k`` of a configuration with ``k`` domains over all the starts so far,
      ``-inf`` until one is met.
    - ``poles``: the current configuration.
    - ``event``: ``"start"`` or ``"move"``.
    """
    restart: int = 0
    iteration: int = 0
    evaluations: int = 0
    step: float = 0.0
    value: float = -math.inf
    domains: int = 0
    best_value: float = -math.inf
    poles: tuple[Point, ...] = ()
    event: str = "start"

    def to_dict(self) -> dict[str, Any]:
        data: dict[str, Any] = asdict(self)
        data["poles"] = [list(point) for point in self.poles]
        return data

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "SearchData":
        return cls(
            restart=int(data["restart"]),
            iteration=int(data["iteration"]),
            evaluations=int(data["evaluations"]),
            step=float(data["step"]),
            value=_finite_or_minus_inf(data["value"]),
            domains=int(data.get("domains", 0)),
            best_value=_finite_or_minus_inf(data["best_value"]),
            poles=tuple((float(x), float(y)) for x, y in data["poles"]),
            event=str(data["event"])
        )

def _finite_or_minus_inf(value: Any) -> float:
    return -math.inf if value is None else float(value)

@dataclass(frozen=True, eq=False)
class SearchResult:
    """Best configuration found by a pole search, with the nodal partition of its ``k``-th eigenfunction.

    ``L_k`` is the energy of that partition. Nothing here claims global optimality.
    """
    k: int
    ell: int
    h: float
    seed: int
    budget: int
    poles: PoleConfig
    lambda_k: float
    spectrum: Spectrum
    partition: NodalPartition
    euler: EulerVerdict
    trace: tuple[SearchData, ...]
    evaluations: int
    cache_hits: int
    restarts: int
    improved: bool

    @property
    def L_k(self) -> float:
        return self.partition.energy

    @property
    def relative_gap(self) -> float:
        """``(L_k - λ_k)/λ_k``."""
        return (self.L_k - self.lambda_k) / self.lambda_k

    @property
    def feasible(self) -> bool:
        """Whether the extracted partition has ``k`` domains."""
        return self.partition.k == self.k

    @property
    def consistent(self) -> bool:
        """Whether the partition has ``k`` domains and its energy matches ``λ_k`` within 2%."""
        return self.feasible and abs(self.relative_gap) <= EQUIPARTITION_TOLERANCE

    @property
    def equipartition_spread(self) -> float:
        """``max_i λ(D_i)/min_i λ(D_i)``."""
        energies = self.partition.energies
        return float(energies.max() / energies.min())

    def to_summary(self) -> dict[str, Any]:
        return {
            "k": self.k,
            "ell": self.ell,
            "h": self.h,
            "seed": self.seed,
            "budget": self.budget,
            "poles": [list(point) for point in self.poles.points],
            "lambda_k": self.lambda_k,
            "domains": self.partition.k,
            "feasible": self.feasible,
            "eigenvalues": self.spectrum.eigenvalues.tolist(),
            "L_k": self.L_k,
            "relative_gap": self.relative_gap,
            "consistent": self.consistent,
            "equipartition_spread": self.equipartition_spread,
            "euler": {"k": self.euler.k, "odd_points": self.euler.odd_points, "bound": self.euler.bound,
                      "passed": self.euler.passed, "vacuous": self.euler.vacuous},
            "partition": self.partition.to_summary(),
            "evaluations": self.evaluations,
            "cache_hits": self.cache_hits,
            "restarts": self.restarts,
            "improved": self.improved,
            "trace": [data.to_dict() for data in self.trace]
        }
