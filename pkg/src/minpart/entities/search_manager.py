from minpart.numerics.partition_analysis import EulerVerdict, NodalPartition, euler_check, extract_partition
from minpart.functors.objective import CacheKey, LambdaKObjective, assess_configuration, k_th_eigenspace
from minpart.data_structs.search import Evaluation, SearchData, SearchResult
from minpart.entities.parallel_search import ProcessSharedData
import minpart.entities.parallel_search as parallel_search
from minpart.errors import BudgetExhaustedWithoutImprovement, GeometryError
from minpart.configs.search_configs import SearchConfigs
from minpart.data_structs.grid import Grid, PoleConfig
from minpart.data_structs.domain import Point

from scipy.stats import qmc

from multiprocessing.pool import Pool
from collections.abc import Callable
from copy import copy
import numpy as np
import warnings
import logging

logger = logging.getLogger(__name__)

IMPROVEMENT_TOLERANCE: float = 1e-9
MAX_DRAWS_PER_START: int = 1000
DIRECTIONS: tuple[tuple[int, int], ...] = ((1, 0), (-1, 0), (0, 1), (0, -1))

class SearchManager:
    """Manager of pole searches.

    The search maximizes ``λ_k`` over configurations of ``ℓ`` poles whose ``λ_k`` eigenspace holds a vector with
    ``k`` nodal domains: every start is drawn from a scrambled Halton sequence, then a compass poll moves one pole
    by ``±step`` along an axis, the best improving move is accepted and the step is halved when no move improves.
    A configuration with fewer (or more) than ``k`` domains is infeasible: it is only preferred to configurations
    farther from ``k`` domains, so the poll first walks toward feasibility and then maximizes ``λ_k``.
    A start ends when the step falls below ``h``, the search when the starts or the budget of eigensolves run out.

    It provides the method ``register_callback`` to which the user can pass a ``Callable[[SearchData], None]``
    that will be called after every start and every accepted move with a copy of the updated ``SearchData``.
    """

    def __init__(self, search_configuration: SearchConfigs) -> None:
        search_configuration.validate()
        self.__grid: Grid = search_configuration.grid
        self.__objective: LambdaKObjective = search_configuration.objective
        self.__k: int = search_configuration.k
        self.__ell: int = search_configuration.ell
        self.__budget: int = search_configuration.budget
        self.__restarts: int = search_configuration.restarts
        self.__initial_step: float = search_configuration.initial_step
        self.__seed: int = search_configuration.seed
        self.__tol: float = search_configuration.tol
        self.__zero_tol: float = search_configuration.zero_tol
        self.__processes_number: int = search_configuration.processes
        self.__searchdata: SearchData = SearchData()
        self.__trace: list[SearchData] = []
        self.__best_poles: PoleConfig = PoleConfig()
        self.__best_evaluation: Evaluation | None = None
        self.__current: PoleConfig = PoleConfig()
        self.__current_evaluation: Evaluation | None = None
        self.__improved: bool = False
        self.__starts: int = 0
        self.__pool: Pool | None = None
        self.__callback: Callable[[SearchData], None] = lambda s: None

    def register_callback(self, callback: Callable[[SearchData], None]) -> None:
        """Register the ``callback`` to call after every start and every accepted move."""
        self.__callback = callback

    def start(self) -> SearchResult:
        """Run the search and return the best configuration found."""
        if self.__processes_number == 1 or self.__ell == 0:
            self.__search()
        else:
            self.__start_parallel()
        return self.__result()

    def __start_parallel(self) -> None:
        shared_data: ProcessSharedData = ProcessSharedData(self.__grid, self.__k, self.__tol, self.__seed, self.__zero_tol)
        with Pool(self.__processes_number, initializer=parallel_search.process_init, initargs=(shared_data,)) as pool:
            self.__pool = pool
            try:
                self.__search()
            finally:
                self.__pool = None

    def __search(self) -> None:
        if self.__ell == 0:
            self.__begin(1, PoleConfig())
            return
        sampler: qmc.Halton = qmc.Halton(d=2 * self.__ell, scramble=True, seed=self.__seed)
        for restart in range(1, self.__restarts + 1):
            if self.__budget_left() == 0:
                break
            poles: PoleConfig = self.__draw_start(sampler)
            if not self.__begin(restart, poles):
                break
            self.__poll_until_converged()
            logger.info("start %d/%d: λ_%d = %.10g with %d domains after %d moves, %d eigensolves so far",
                        restart, self.__restarts, self.__k, self.__searchdata.value, self.__searchdata.domains,
                        self.__searchdata.iteration, self.__objective.misses)
        if self.__budget_left() == 0 and not self.__improved:
            warnings.warn(f"The budget of {self.__budget} eigensolves was spent without accepting a move",
                          BudgetExhaustedWithoutImprovement, stacklevel=3)

    def __begin(self, restart: int, poles: PoleConfig) -> bool:
        """Evaluate the start ``poles``; return ``False`` if the budget did not allow it."""
        evaluation: Evaluation | None = self.__evaluate([poles])[0]
        if evaluation is None:
            return False
        self.__starts = restart
        self.__current = poles
        self.__current_evaluation = evaluation
        self.__searchdata = SearchData(
            restart=restart,
            iteration=0,
            evaluations=self.__objective.misses,
            step=self.__initial_step,
            value=evaluation.value,
            domains=evaluation.domains,
            best_value=self.__searchdata.best_value,
            poles=poles.points,
            event="start"
        )
        self.__keep_if_best(poles, evaluation)
        self.__record()
        return True

    def __poll_until_converged(self) -> None:
        step: float = self.__initial_step
        while step >= self.__grid.h and self.__budget_left() > 0:
            candidates: list[PoleConfig] = self.__poll(self.__current, step)
            evaluations: list[Evaluation | None] = self.__evaluate(candidates)
            ranked: list[int] = [index for index, evaluation in enumerate(evaluations) if evaluation is not None]
            best_index: int = max(ranked, key=lambda index: evaluations[index].rank(self.__k), default=-1)
            if best_index >= 0 and self.__improves(evaluations[best_index], self.__current_evaluation):
                self.__move(candidates[best_index], evaluations[best_index], step)
            else:
                step /= 2
                self.__searchdata.step = step

    def __improves(self, candidate: Evaluation, current: Evaluation) -> bool:
        """Whether ``candidate`` is closer to ``k`` domains than ``current``, or as close with a larger ``λ_k``."""
        closeness, value = candidate.rank(self.__k)
        current_closeness, current_value = current.rank(self.__k)
        if closeness != current_closeness:
            return closeness > current_closeness
        return value > current_value + IMPROVEMENT_TOLERANCE * max(1.0, abs(current_value))

    def __move(self, poles: PoleConfig, evaluation: Evaluation, step: float) -> None:
        self.__improved = True
        self.__current = poles
        self.__current_evaluation = evaluation
        self.__searchdata.iteration += 1
        self.__searchdata.evaluations = self.__objective.misses
        self.__searchdata.step = step
        self.__searchdata.value = evaluation.value
        self.__searchdata.domains = evaluation.domains
        self.__searchdata.poles = poles.points
        self.__searchdata.event = "move"
        self.__keep_if_best(poles, evaluation)
        self.__record()

    def __keep_if_best(self, poles: PoleConfig, evaluation: Evaluation) -> None:
        if evaluation.feasible(self.__k):
            self.__searchdata.best_value = max(self.__searchdata.best_value, evaluation.value)
        if self.__best_evaluation is None or evaluation.rank(self.__k) > self.__best_evaluation.rank(self.__k):
            self.__best_poles = poles
            self.__best_evaluation = evaluation

    def __record(self) -> None:
        data: SearchData = copy(self.__searchdata)
        self.__trace.append(data)
        self.__callback(copy(data))

    def __poll(self, current: PoleConfig, step: float) -> list[PoleConfig]:
        """Return the distinct valid configurations moving one pole of ``current`` by ``step`` along an axis."""
        candidates: dict[tuple[tuple[int, int], ...], PoleConfig] = {}
        for index in range(len(current)):
            for dx, dy in DIRECTIONS:
                points: list[Point] = list(current.points)
                x, y = points[index]
                points[index] = (x + dx * step, y + dy * step)
                poles: PoleConfig | None = self.__objective.snap(points)
                if poles is None or poles.key == current.key or poles.key in candidates:
                    continue
                candidates[poles.key] = poles
        return list(candidates.values())

    def __draw_start(self, sampler: qmc.Halton) -> PoleConfig:
        """Return the next valid configuration of the quasi-random sequence."""
        xmin, ymin, xmax, ymax = self.__grid.spec.bounding_box()
        for _ in range(MAX_DRAWS_PER_START):
            sample: np.ndarray = sampler.random(1)[0]
            points: list[Point] = [(float(xmin + sample[2 * p] * (xmax - xmin)), float(ymin + sample[2 * p + 1] * (ymax - ymin)))
                                   for p in range(self.__ell)]
            poles: PoleConfig | None = self.__objective.snap(points)
            if poles is not None:
                return poles
        raise GeometryError(f"Could not place {self.__ell} distinct poles on {self.__grid.spec.identifier} "
                            + f"in {MAX_DRAWS_PER_START} draws")

    def __budget_left(self) -> int:
        return max(0, self.__budget - self.__objective.misses)

    def __evaluate(self, configurations: list[PoleConfig]) -> list[Evaluation | None]:
        """Return the evaluation of every configuration, ``None`` for the ones the budget did not cover."""
        evaluations: dict[CacheKey, Evaluation] = {}
        missing: dict[CacheKey, PoleConfig] = {}
        for poles in configurations:
            key: CacheKey = self.__objective.key(poles)
            if key in evaluations or key in missing:
                continue
            cached: Evaluation | None = self.__objective.cached(poles)
            if cached is None:
                missing[key] = poles
            else:
                evaluations[key] = cached
        to_compute: list[PoleConfig] = list(missing.values())[:self.__budget_left()]
        computed: list[Evaluation]
        if self.__pool is None:
            computed = [assess_configuration(self.__grid, poles, self.__k, self.__tol, self.__seed, self.__zero_tol)
                        for poles in to_compute]
        else:
            computed = self.__pool.map(parallel_search.process_main, [poles.plaquettes for poles in to_compute])
        for poles, evaluation in zip(to_compute, computed):
            self.__objective.store(poles, evaluation)
            evaluations[self.__objective.key(poles)] = evaluation
        return [evaluations.get(self.__objective.key(poles)) for poles in configurations]

    def __result(self) -> SearchResult:
        poles: PoleConfig = self.__best_poles
        operator, spectrum, choice = k_th_eigenspace(self.__grid, poles, self.__k, self.__tol, self.__seed, self.__zero_tol)
        value: float = float(spectrum.eigenvalues[self.__k - 1])
        partition: NodalPartition = extract_partition(choice.vector, operator.gauge, self.__grid, self.__zero_tol,
                                                      poles=poles, eigenvalue=value, processes=self.__processes_number)
        euler: EulerVerdict = euler_check(partition)
        if partition.k != self.__k:
            logger.warning("no configuration with %d nodal domains was found; the best one has %d in an eigenspace of dimension %d",
                           self.__k, partition.k, choice.dimension)
        logger.info("best λ_%d = %.10g, partition energy %.10g, %d eigensolves, %d cache hits",
                    self.__k, value, partition.energy, self.__objective.misses, self.__objective.hits)
        return SearchResult(
            k=self.__k,
            ell=self.__ell,
            h=self.__grid.h,
            seed=self.__seed,
            budget=self.__budget,
            poles=poles,
            lambda_k=value,
            spectrum=spectrum,
            partition=partition,
            euler=euler,
            trace=tuple(self.__trace),
            evaluations=self.__objective.misses,
            cache_hits=self.__objective.hits,
            restarts=self.__starts,
            improved=self.__improved
        )
