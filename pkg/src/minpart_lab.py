from minpart.numerics.partition_analysis import (BoundaryGraph, NodalPartition, boundary_graph, courant_check,
                                                 domain_faber_krahn, euler_check, extract_partition, hexagonal_diagnostic)
from minpart.numerics.weyl_counting import CSV_COLUMNS, CountReport, check_universal_bound, min_t_for_wq, violation_summary
from minpart.numerics.certificate import BoundReport, certify, nu_lower_bound
from minpart.numerics.eigensolver import RichardsonEstimate, richardson_spectrum
from minpart.errors import INPUT_ERRORS, InvariantViolation, SolverError, ThresholdNotFound
from minpart.numerics.constants_ledger import ConstantLedger, build_ledgers
from minpart.configs.spectral_configs import SpectralConfigs
from minpart.configs.certify_configs import CertifyConfigs
from minpart.configs.search_configs import SearchConfigs
from minpart.entities.search_manager import SearchManager
from minpart.views.ascii_view import PartitionASCIIView
from minpart.configs.weyl_configs import WeylConfigs
from minpart.configs.base_configs import BaseConfigs
from minpart.views.report_writer import ReportWriter, to_jsonable
from minpart.functors.objective import ab_spectrum
from minpart.data_structs.search import SearchResult
from minpart.data_structs.domain import DomainSpec
from minpart.views.pgm_view import PGMView
from minpart import TOOL_NAME, __version__

from argparse import ArgumentParser, Namespace
from collections.abc import Sequence
from typing import Any
import logging
import json
import sys

logger = logging.getLogger("minpart_lab")

NU_EXAMPLES: tuple[int, ...] = (1, 10, 100, 1000)

def main() -> None:
    sys.exit(run())


def run(argv: Sequence[str] | None = None) -> int:
    """Run one subcommand and return the exit code.

    0 on success, 2 on configuration errors, 3 on solver failures, 4 on invariant violations.
    """
    parser: ArgumentParser = get_argument_parser()
    try:
        arguments: Namespace = parser.parse_args(argv)
    except SystemExit as error:
        return error.code if isinstance(error.code, int) else 2
    configure_logging(arguments.verbose, arguments.quiet)
    try:
        arguments.handler(arguments)
    except InvariantViolation as error:
        logger.error("invariant violation: %s", error)
        return 4
    except SolverError as error:
        logger.error("solver failure: %s", error)
        return 3
    except (*INPUT_ERRORS, OSError) as error:
        logger.error("configuration error: %s", error)
        return 2
    return 0


def configure_logging(verbose: bool, quiet: bool) -> None:
    level: int = logging.DEBUG if verbose else logging.WARNING if quiet else logging.INFO
    logging.basicConfig(level=level, format="%(asctime)s %(levelname)s %(name)s: %(message)s", force=True)


def run_constants(arguments: Namespace) -> None:
    configuration: WeylConfigs = get_weyl_configuration(arguments)
    configuration.validate()
    ledgers: dict[str, ConstantLedger] = build_ledgers(configuration.j_squared)
    data: dict[str, Any] = {
        "ledgers": ledgers,
        "nu_lower_bound": [nu_lower_bound(k) for k in NU_EXAMPLES]
    }
    writer: ReportWriter = ReportWriter(configuration.out_dir, subcommand_config("constants", configuration))
    writer.write_json("constants.json", data)
    print(json.dumps(to_jsonable(data), indent=2, sort_keys=True))


def run_weyl(arguments: Namespace) -> None:
    configuration: WeylConfigs = get_weyl_configuration(arguments)
    configuration.validate()
    reports: list[CountReport] = check_universal_bound(configuration.t_values)
    writer: ReportWriter = ReportWriter(configuration.out_dir, subcommand_config("weyl", configuration))
    writer.write_csv("weyl.csv", CSV_COLUMNS, (report.row() for report in reports))
    summary: dict[str, Any] = violation_summary(reports)
    if configuration.eps is not None:
        try:
            summary["wq_threshold"] = min_t_for_wq(configuration.eps, configuration.wq_t_max)
        except ThresholdNotFound as error:
            logger.warning("%s", error)
            summary["wq_threshold"] = None
    writer.write_json("weyl_summary.json", summary)
    for name, label in (("paper", "printed"), ("corrected", "corrected")):
        print(f"{label:>9} bound: {summary[name]['violations']} violations in {summary['rows']} rows"
              + (f", from t={summary[name]['first']} to t={summary[name]['last']}" if summary[name]["violations"] else ""))


def run_solve(arguments: Namespace) -> None:
    configuration: SpectralConfigs = get_spectral_configuration(arguments)
    configuration.validate()
    writer: ReportWriter = ReportWriter(configuration.out_dir, subcommand_config("solve", configuration))
    if configuration.richardson:
        estimate: RichardsonEstimate = richardson_spectrum(configuration.domain, configuration.k, configuration.h,
                                                           configuration.pole_points, configuration.tol, configuration.seed)
        writer.write_json("spectrum.json", {"h": estimate.h, "coarse": estimate.coarse, "fine": estimate.fine,
                                            "extrapolated": estimate.extrapolated})
        print_values("extrapolated eigenvalues", estimate.extrapolated)
        return
    operator, spectrum = ab_spectrum(configuration.grid, configuration.poles, configuration.k, configuration.tol, configuration.seed)
    writer.write_json("spectrum.json", {
        "h": spectrum.h,
        "dimension": operator.dimension,
        "poles": configuration.poles.points,
        "method": spectrum.method,
        "iterations": spectrum.iterations,
        "eigenvalues": spectrum.eigenvalues,
        "residuals": spectrum.residuals
    })
    if configuration.dump_matrix:
        operator.write_coo(writer.path("operator.coo"))
    print_values("eigenvalues", spectrum.eigenvalues)


def run_partition(arguments: Namespace) -> None:
    configuration: SpectralConfigs = get_spectral_configuration(arguments)
    configuration.validate()
    k: int = configuration.k
    operator, spectrum = ab_spectrum(configuration.grid, configuration.poles, k, configuration.tol, configuration.seed)
    partition: NodalPartition = extract_partition(spectrum.vector(k), operator.gauge, configuration.grid, configuration.zero_tol,
                                                  poles=configuration.poles, eigenvalue=float(spectrum.eigenvalues[k - 1]),
                                                  processes=configuration.processes)
    graph: BoundaryGraph = boundary_graph(partition, configuration.grid)
    data: dict[str, Any] = partition.to_summary() | {
        "index": k,
        "euler": euler_check(partition),
        "courant": courant_check(partition, k),
        "faber_krahn": domain_faber_krahn(partition, configuration.grid),
        "boundary_graph": {"vertices": len(graph.vertices), "arcs": len(graph.arcs),
                           "critical_vertices": len(graph.critical_vertices)}
    }
    writer: ReportWriter = ReportWriter(configuration.out_dir, subcommand_config("partition", configuration))
    writer.write_json("partition.json", data)
    PGMView(configuration.grid).write_to_file(partition, writer.path("partition.pgm"))
    if configuration.show:
        PartitionASCIIView(configuration.grid).print_partition(partition)
    else:
        print(f"{partition.k} domains, energy {partition.energy:.10g}, eigenvalue {partition.eigenvalue:.10g}")


def run_search(arguments: Namespace) -> None:
    configuration: SearchConfigs = get_search_configuration(arguments)
    search_manager: SearchManager = SearchManager(configuration)
    result: SearchResult = search_manager.start()
    writer: ReportWriter = ReportWriter(configuration.out_dir, subcommand_config("search", configuration))
    writer.write_json("search.json", result.to_summary())
    PGMView(configuration.grid).write_to_file(result.partition, writer.path("search.pgm"))
    if configuration.show:
        PartitionASCIIView(configuration.grid).print_partition(result.partition)
    print(f"λ_{result.k} = {result.lambda_k:.10g} with {result.ell} poles at {list(result.poles.points)}")
    print(f"partition energy {result.L_k:.10g}, spread {result.equipartition_spread:.6f}, "
          + f"{result.euler.odd_points} odd critical points (Euler bound {result.euler.bound})")
    if not result.feasible:
        print(f"no configuration with {result.k} nodal domains was found, the best one has {result.partition.k}")


def run_certify(arguments: Namespace) -> None:
    configuration: CertifyConfigs = get_certify_configuration(arguments)
    configuration.validate()
    report: BoundReport = certify(configuration.domain, configuration.k, configuration.pole_points, configuration.h,
                                  configuration.lk, configuration.eps, configuration.t, configuration.counting_bound,
                                  configuration.tol, configuration.seed)
    writer: ReportWriter = ReportWriter(configuration.out_dir, subcommand_config("certify", configuration))
    writer.write_json("certificate.json", report.to_summary() | {"nu_lower_bound": nu_lower_bound(configuration.k)})
    print_table([
        ("k", report.k),
        ("L_k", report.L_k),
        ("poles", report.ell),
        ("eps", report.eps),
        (f"t ({report.t_source})", report.t),
        ("squares kept", report.tiling.kept if report.tiling else None),
        ("tiled count", report.superadditivity.tiled_sum if report.superadditivity else None),
        ("domain count", report.superadditivity.domain_count if report.superadditivity else None),
        ("RHS / k", report.rhs_over_k),
        ("contradiction", report.contradiction),
        ("alpha", report.alpha),
        ("alpha threshold", report.alpha_threshold),
        (f"c0 ({report.bound})", report.c0),
        ("A L_k / k", report.faber_krahn.value),
        ("nu_k lower bound", report.certified_nu_lower_bound)
    ])


def run_hexagonal_diagnostic(arguments: Namespace) -> None:
    configuration: SpectralConfigs = get_spectral_configuration(arguments)
    configuration.validate()
    entries: list[tuple[int, float]] = list(enumerate(configuration.lk_values, start=1))
    nu: dict[int, int] | None = dict(enumerate(configuration.nu_values, start=1)) if configuration.nu_values else None
    report = hexagonal_diagnostic(entries, configuration.domain.area, nu, configuration.h)
    writer: ReportWriter = ReportWriter(configuration.out_dir, subcommand_config("hexa-diagnostic", configuration))
    writer.write_json("hexagonal.json", report)
    print(f"hexagon ground energy {report.hexagon_energy:.6f}, Faber-Krahn constant {report.faber_krahn_constant:.6f}")
    for row in report.rows:
        print(f"k={row.k:>4}  A*L_k/k={row.normalized_energy:>12.6f}  ratio={row.hexagon_ratio:.6f}"
              + (f"  nu_k/k={row.nu_over_k:.4f}" if row.nu_over_k is not None else ""))


def subcommand_config(subcommand: str, configuration: BaseConfigs) -> dict[str, Any]:
    return {"subcommand": subcommand} | configuration.to_dict()


def print_values(title: str, values: Sequence[float]) -> None:
    print(f"{title}:")
    for index, value in enumerate(values, start=1):
        print(f"{index:>4}  {float(value):.12g}")


def print_table(rows: list[tuple[str, Any]]) -> None:
    width: int = max(len(name) for name, _ in rows)
    for name, value in rows:
        print(f"{name:<{width}}  {value:.10g}" if isinstance(value, float) else f"{name:<{width}}  {value}")


def get_argument_parser() -> ArgumentParser:
  common: ArgumentParser = ArgumentParser(add_help=False)
  common.add_argument("--config", type=str, help="Path to a JSON configuration file, overridden by the flags")
  common.add_argument("--domain", type=str, help="unit_square, disk, hexagon or a JSON domain object")
  common.add_argument("--h", type=float, help="Grid spacing")
  common.add_argument("--tol", type=float, help="Eigensolver relative tolerance")
  common.add_argument("--seed", type=int, help="Seed of every random choice")
  common.add_argument("--out", type=str, help="Output directory")
  common.add_argument("-proc", "--processes", type=int, default=0, help="The number of processes, MINPART_THREADS or the number of cores by default")
  common.add_argument("-v", "--verbose", action="store_true", help="Log debug messages")
  common.add_argument("-q", "--quiet", action="store_true", help="Log warnings and errors only")

  parser: ArgumentParser = ArgumentParser(prog=TOOL_NAME, description="Spectral minimal partition laboratory.")
  parser.add_argument("--version", action="version", version=f"{TOOL_NAME} {__version__}")
  subparsers = parser.add_subparsers(dest="command", required=True)

  constants: ArgumentParser = subparsers.add_parser("constants", parents=[common], help="Ledger of the constants of the linear bound")
  constants.add_argument("--j-squared", type=float, help="Faber-Krahn type constant replacing j^2")
  constants.set_defaults(handler=run_constants)

  weyl: ArgumentParser = subparsers.add_parser("weyl", parents=[common], help="Exact counting function of the square against the universal bounds")
  weyl.add_argument("--t-min", type=float, help="Smallest t of the scan")
  weyl.add_argument("--t-max", type=float, help="Largest t of the scan")
  weyl.add_argument("--step", type=float, help="Step of the scan")
  weyl.add_argument("--eps", type=float, help="Also search the smallest t of the counting inequality for this eps")
  weyl.add_argument("--wq-t-max", type=float, help="Cap of that search")
  weyl.set_defaults(handler=run_weyl)

  solve: ArgumentParser = subparsers.add_parser("solve", parents=[common], help="Smallest eigenvalues of the Laplacian or of an AB operator")
  add_spectral_arguments(solve)
  solve.add_argument("--richardson", action="store_true", help="Extrapolate from h and h/2")
  solve.add_argument("--dump-matrix", action="store_true", help="Write the operator in coordinate format")
  solve.set_defaults(handler=run_solve)

  partition: ArgumentParser = subparsers.add_parser("partition", parents=[common], help="Nodal partition of the k-th eigenfunction")
  add_spectral_arguments(partition)
  partition.add_argument("--zero-tol", type=float, help="Relative threshold under which a value counts as zero")
  partition.add_argument("--show", action="store_true", help="Print the partition")
  partition.set_defaults(handler=run_partition)

  search: ArgumentParser = subparsers.add_parser("search", parents=[common], help="Pole search for a minimal k-partition")
  search.add_argument("--k", type=int, help="Index of the maximized eigenvalue")
  search.add_argument("--poles", type=int, help="Number of poles")
  search.add_argument("--budget", type=int, help="Maximum number of eigensolves")
  search.add_argument("--restarts", type=int, help="Number of quasi-random starts")
  search.add_argument("--initial-step", type=float, help="First poll step")
  search.add_argument("--zero-tol", type=float, help="Relative threshold under which a value counts as zero")
  search.add_argument("--show", action="store_true", help="Print the best partition")
  search.set_defaults(handler=run_search)

  certify_parser: ArgumentParser = subparsers.add_parser("certify", parents=[common], help="Finite-k counting certificate")
  certify_parser.add_argument("--k", type=int, help="Number of domains")
  certify_parser.add_argument("--pole-at", type=float, nargs=2, action="append", metavar=("X", "Y"), help="Pole position, repeatable")
  certify_parser.add_argument("--lk", type=float, help="Partition energy, the k-th AB eigenvalue by default")
  certify_parser.add_argument("--eps", type=float, help="eps, eps_max by default")
  certify_parser.add_argument("--t", type=float, help="Spectral parameter, t(eps) by default")
  certify_parser.add_argument("--bound", type=str, choices=["paper", "corrected"], help="Counting bound")
  certify_parser.set_defaults(handler=run_certify)

  hexagonal: ArgumentParser = subparsers.add_parser("hexa-diagnostic", parents=[common], help="Trend of A*L_k/k against the hexagon energy")
  hexagonal.add_argument("--lk", type=float, nargs="+", help="L_1, L_2, ... (at least two)")
  hexagonal.add_argument("--nu", type=int, nargs="+", help="nu_1, nu_2, ... matching --lk")
  hexagonal.set_defaults(handler=run_hexagonal_diagnostic)

  return parser


def add_spectral_arguments(parser: ArgumentParser) -> None:
  parser.add_argument("--k", type=int, help="Number of eigenpairs, or index of the analysed eigenfunction")
  parser.add_argument("--pole-at", type=float, nargs=2, action="append", metavar=("X", "Y"), help="Pole position, repeatable")


def apply_common_arguments(configuration: BaseConfigs, arguments: Namespace) -> None:
  if arguments.config is not None:
    configuration.configs_file_path = arguments.config
  if arguments.domain is not None:
    configuration.domain = DomainSpec.parse(arguments.domain)
  if arguments.h is not None:
    configuration.h = arguments.h
  if arguments.tol is not None:
    configuration.tol = arguments.tol
  if arguments.seed is not None:
    configuration.seed = arguments.seed
  if arguments.out is not None:
    configuration.out_dir = arguments.out
  if arguments.processes > 0:
    configuration.processes = arguments.processes


def get_weyl_configuration(arguments: Namespace) -> WeylConfigs:
  weyl_configuration: WeylConfigs = WeylConfigs()

  apply_common_arguments(weyl_configuration, arguments)
  if getattr(arguments, "t_min", None) is not None:
    weyl_configuration.t_min = arguments.t_min
  if getattr(arguments, "t_max", None) is not None:
    weyl_configuration.t_max = arguments.t_max
  if getattr(arguments, "step", None) is not None:
    weyl_configuration.step = arguments.step
  if getattr(arguments, "eps", None) is not None:
    weyl_configuration.eps = arguments.eps
  if getattr(arguments, "wq_t_max", None) is not None:
    weyl_configuration.wq_t_max = arguments.wq_t_max
  if getattr(arguments, "j_squared", None) is not None:
    weyl_configuration.j_squared = arguments.j_squared

  return weyl_configuration


def get_spectral_configuration(arguments: Namespace) -> SpectralConfigs:
  spectral_configuration: SpectralConfigs = SpectralConfigs()

  apply_common_arguments(spectral_configuration, arguments)
  if getattr(arguments, "k", None) is not None:
    spectral_configuration.k = arguments.k
  if getattr(arguments, "pole_at", None) is not None:
    spectral_configuration.pole_points = [(x, y) for x, y in arguments.pole_at]
  if getattr(arguments, "zero_tol", None) is not None:
    spectral_configuration.zero_tol = arguments.zero_tol
  if getattr(arguments, "lk", None) is not None:
    spectral_configuration.lk_values = list(arguments.lk)
  if getattr(arguments, "nu", None) is not None:
    spectral_configuration.nu_values = list(arguments.nu)
  if getattr(arguments, "richardson", False):
    spectral_configuration.richardson = True
  if getattr(arguments, "dump_matrix", False):
    spectral_configuration.dump_matrix = True
  if getattr(arguments, "show", False):
    spectral_configuration.show = True

  return spectral_configuration


def get_search_configuration(arguments: Namespace) -> SearchConfigs:
  search_configuration: SearchConfigs = SearchConfigs()

  apply_common_arguments(search_configuration, arguments)
  if arguments.k is not None:
    search_configuration.k = arguments.k
  if arguments.poles is not None:
    search_configuration.ell = arguments.poles
  if arguments.budget is not None:
    search_configuration.budget = arguments.budget
  if arguments.restarts is not None:
    search_configuration.restarts = arguments.restarts
  if arguments.initial_step is not None:
    search_configuration.initial_step = arguments.initial_step
  if arguments.zero_tol is not None:
    search_configuration.zero_tol = arguments.zero_tol
  if arguments.show:
    search_configuration.show = True

  return search_configuration


def get_certify_configuration(arguments: Namespace) -> CertifyConfigs:
  certify_configuration: CertifyConfigs = CertifyConfigs()

  apply_common_arguments(certify_configuration, arguments)
  if arguments.k is not None:
    certify_configuration.k = arguments.k
  if arguments.pole_at is not None:
    certify_configuration.pole_points = [(x, y) for x, y in arguments.pole_at]
  if arguments.lk is not None:
    certify_configuration.lk = arguments.lk
  if arguments.eps is not None:
    certify_configuration.eps = arguments.eps
  if arguments.t is not None:
    certify_configuration.t = arguments.t
  if arguments.bound is not None:
    certify_configuration.bound = arguments.bound

  return certify_configuration


if __name__ == "__main__":
    main()
