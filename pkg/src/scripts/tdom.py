#!/usr/bin/env python3
"""
tdom Command Line
Front end for bounds, zero counts, valency grids, domination fits, Borel transforms and the acceptance suites.

Exit codes: 0 success, 1 usage error or unreadable series file,
2 contract violation, 3 uncertified numerical result.
"""

import sys
import logging
import argparse
from pathlib import Path
from typing import Any, Dict, List, Optional, TextIO, Tuple

from src.settings import Settings, get_settings
from src.components.borel import QuadratureSpec, borel, inverse_borel_coeff, inverse_borel_integral
from src.components.bounds import (
    borel_valency_bound,
    eta_closed_bounds,
    eta_scan,
    q_bound,
)
from src.components.domination import (
    ConstantShape,
    DominationProfile,
    PowerShape,
    check_domination,
    minimal_power_factor,
)
from src.components.errors import TdomError, UncertifiedResult, UsageError
from src.components.families import DIVERGENT_MARKER, EXAMPLE_NAMES, ExampleId, borel_counterpart, build
from src.components.report import RunReport
from src.components.series import (
    PowerSeries,
    dumps_series,
    load_series,
    save_series,
    series_to_dict,
    tail_bound,
    truncate,
)
from src.components.valency import ContourSpec, valency_lower_bound, winding_number
from src.scripts.verify import SUITES, rows_csv, run_suites

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_CONTRACT = 2
EXIT_UNCERTIFIED = 3

_STDOUT_TARGETS = ("-", "/dev/stdout")


def setup_logging(settings: Settings):
    """Configure the root logger once: stderr always, a log file when enabled"""
    handlers: List[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    if settings.logging.file_enabled:
        log_path = Path(settings.logging.file_path)
        log_path.parent.mkdir(parents=True, exist_ok=True)
        handlers.append(logging.FileHandler(log_path))
    logging.basicConfig(
        level=getattr(logging, settings.logging.level, logging.WARNING),
        format=settings.logging.format,
        handlers=handlers,
        force=True,
    )


def parse_complex(text: str) -> complex:
    """'RE,IM' or a single real"""
    parts = text.split(",")
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise argparse.ArgumentTypeError(f"expected RE,IM, got '{text}'")


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that raises instead of exiting, so usage errors map to exit code 1"""

    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--csv", action="store_true", help="Write the report as CSV rows instead of JSON")

    source = argparse.ArgumentParser(add_help=False)
    group = source.add_mutually_exclusive_group(required=True)
    group.add_argument("--series", help="JSON series file")
    group.add_argument("--example", choices=EXAMPLE_NAMES, help="Built-in example family")
    source.add_argument("--p", type=int, default=1, help="Example parameter p")
    source.add_argument("--order", type=int, help="Truncation order (required with --example)")

    contour = argparse.ArgumentParser(add_help=False)
    contour.add_argument("--r", type=float, required=True, help="Contour radius")
    contour.add_argument("--samples", type=int, help="Initial contour samples (power of two)")
    contour.add_argument("--max-samples", type=int, help="Sample cap (power of two)")
    contour.add_argument("--min-modulus", type=float, help="Absolute guard on |f - c| along the contour")

    parser = _Parser(prog="tdom", description="Taylor domination, Borel transforms and valency toolkit")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    bounds = sub.add_parser("bounds", parents=[common], help="Valency bound q for the Borel transform")
    bounds.add_argument("--p", type=int, required=True)
    bounds.add_argument("--R", type=float, required=True)
    bounds.add_argument("--A", type=float, default=1.0, help="Stand-in for the constant A(p)")
    bounds.add_argument("--from-series", help="Fit A(p) on this series instead of using --A")
    bounds.add_argument("--kmax", type=int, help="Fit range for --from-series")

    eta = sub.add_parser("eta", parents=[common], help="Scan eta and its closed-form bounds")
    eta.add_argument("--p", type=int, required=True)
    eta.add_argument("--R", type=float, required=True)

    zeros = sub.add_parser("zeros", parents=[common, source, contour], help="Count solutions of f(z) = c")
    zeros.add_argument("--c", type=parse_complex, default=0j, help="Target value RE,IM")

    valency = sub.add_parser("valency", parents=[common, source, contour], help="Grid lower bound on valency")
    valency.add_argument("--grid", type=int, default=16)
    valency.add_argument("--seed", type=int, default=0)
    valency.add_argument("--threads", type=int)

    dominate = sub.add_parser("dominate", parents=[common, source], help="Fit or check Taylor domination")
    dominate.add_argument("--N", type=int, required=True)
    dominate.add_argument("--R", type=float, required=True)
    dominate.add_argument("--kmax", type=int, required=True)
    dominate.add_argument("--m", type=float, default=0.0, help="Power shape S(k) = A k^m (0 for a constant)")
    dominate.add_argument("--exclude-a0", action="store_true")
    dominate.add_argument("--check", type=float, help="Check domination with this C (or A when --m > 0)")

    borel_cmd = sub.add_parser("borel", parents=[common, source], help="Borel transform and its inverses")
    borel_cmd.add_argument("--inverse", action="store_true", help="Multiply by k! instead of dividing")
    borel_cmd.add_argument("--integral", action="store_true", help="Evaluate the inverse Borel integral")
    borel_cmd.add_argument("--z", type=parse_complex, default=0j)
    borel_cmd.add_argument("--cutoff", type=float)
    borel_cmd.add_argument("--nodes", type=int)
    borel_cmd.add_argument("--trust-radius", type=float)
    borel_cmd.add_argument("--out", help="Write the transformed series here ('-' for standard output)")

    example = sub.add_parser("example", parents=[common], help="Export an example family")
    example.add_argument("--name", choices=EXAMPLE_NAMES, required=True)
    example.add_argument("--p", type=int, default=1)
    example.add_argument("--order", type=int, required=True)
    example.add_argument("--out", required=True)

    verify = sub.add_parser("verify", help="Run the acceptance suites")
    verify.add_argument("--suite", choices=("all",) + SUITES, default="all")
    verify.add_argument("--report", help="Write the CSV table here as well")
    verify.add_argument("--seed", type=int, default=0)
    verify.add_argument("--threads", type=int)
    return parser


class TdomCommands:
    """Maps parsed arguments onto library calls and collects reports"""

    def __init__(self, settings: Settings, stdout: TextIO):
        self.settings = settings
        self.stdout = stdout

    # helpers

    def load_source(self, args) -> PowerSeries:
        if args.example:
            if args.order is None:
                raise UsageError("--order is required with --example")
            return build(ExampleId(args.example, args.p, args.order))
        f = load_series(args.series)
        if args.order is not None:
            f = truncate(f, args.order)
        return f

    def contour_spec(self, args) -> ContourSpec:
        return ContourSpec(
            radius=args.r,
            initial_samples=args.samples or self.settings.contour.initial_samples,
            max_samples=args.max_samples or self.settings.contour.max_samples,
            min_modulus=args.min_modulus,
            max_phase_step=self.settings.contour.max_phase_step,
            min_modulus_rel=self.settings.contour.min_modulus_rel,
        )

    def threads(self, args) -> int:
        return args.threads if args.threads else self.settings.runtime.threads

    def emit_series(self, f: PowerSeries, out: str) -> Optional[str]:
        """Write a series file; returns None when it went to standard output"""
        if out in _STDOUT_TARGETS:
            self.stdout.write(dumps_series(f))
            return None
        return str(save_series(f, out))

    # commands

    def bounds(self, args) -> Tuple[RunReport, bool]:
        inputs = {"p": args.p, "R": args.R}
        if args.from_series:
            if args.kmax is None:
                raise UsageError("--kmax is required with --from-series")
            report = borel_valency_bound(load_series(args.from_series), args.p, args.R, args.kmax)
            inputs.update({"from_series": args.from_series, "kmax": args.kmax})
        else:
            report = q_bound(args.p, args.R, args.A)
            inputs["A"] = args.A
        return RunReport(command="bounds", inputs=inputs, outputs=report.to_dict(),
                         warnings=list(report.warnings)), True

    def eta(self, args) -> Tuple[RunReport, bool]:
        log_eta, k = eta_scan(args.p, args.R)
        log_eta1, log_eta2 = eta_closed_bounds(args.p, args.R)
        outputs = {"log_eta": log_eta, "eta_argmax_k": k, "log_eta1_bound": log_eta1, "log_eta2_bound": log_eta2}
        return RunReport(command="eta", inputs={"p": args.p, "R": args.R}, outputs=outputs), True

    def zeros(self, args) -> Tuple[RunReport, bool]:
        f = self.load_source(args)
        spec = self.contour_spec(args)
        result = winding_number(f, args.c, spec)
        outputs = {
            "label": f.label,
            "count": result.count,
            "certified": result.certified,
            "raw_winding": result.raw_winding,
            "samples": result.samples,
            "min_modulus": result.min_modulus,
            "tail_bound": tail_bound(f, spec.radius),
        }
        inputs = {"source": args.series or args.example, "p": args.p, "order": f.order, "r": args.r, "c": args.c}
        warnings = [] if result.certified else ["winding count not certified"]
        return RunReport(command="zeros", inputs=inputs, outputs=outputs, warnings=warnings), result.certified

    def valency(self, args) -> Tuple[RunReport, bool]:
        f = self.load_source(args)
        report = valency_lower_bound(f, self.contour_spec(args), args.grid, args.seed, workers=self.threads(args))
        rows = [{"c": t.c, "count": t.count, "certified": t.certified} for t in report.targets]
        outputs = {
            "label": f.label,
            "radius": report.radius,
            "max_count": report.max_count,
            "certified_targets": report.certified_targets,
            "grid_description": report.grid_description,
            "rows": rows,
        }
        inputs = {"source": args.series or args.example, "p": args.p, "order": f.order, "r": args.r,
                  "grid": args.grid, "seed": args.seed}
        warnings = ["max_count is a lower bound on the valency"]
        return RunReport(command="valency", inputs=inputs, outputs=outputs, warnings=warnings), True

    def dominate(self, args) -> Tuple[RunReport, bool]:
        f = self.load_source(args)
        include = not args.exclude_a0
        fitted = minimal_power_factor(f, args.N, args.R, args.m, args.kmax, include_constant_term=include)
        outputs: Dict[str, Any] = {"label": f.label, "minimal_factor": fitted}
        if args.check is not None:
            shape = ConstantShape(args.check) if args.m == 0 else PowerShape(args.check, args.m)
            result = check_domination(f, DominationProfile(args.N, args.R, shape, include), args.kmax)
            outputs.update({"holds": result.holds, "worst_k": result.worst_k, "worst_ratio": result.worst_ratio})
        inputs = {"source": args.series or args.example, "N": args.N, "R": args.R, "kmax": args.kmax,
                  "m": args.m, "include_constant_term": include}
        return RunReport(command="dominate", inputs=inputs, outputs=outputs), True

    def borel(self, args) -> Tuple[RunReport, bool]:
        f = self.load_source(args)
        inputs: Dict[str, Any] = {"source": args.series or args.example, "order": f.order}
        warnings = []
        if args.integral:
            spec = QuadratureSpec(
                node_count=args.nodes or self.settings.quadrature.node_count,
                cutoff_T=args.cutoff or self.settings.quadrature.cutoff_T,
                trust_radius=args.trust_radius or self.settings.quadrature.trust_radius,
            )
            result = inverse_borel_integral(f, args.z, spec)
            inputs.update({"z": args.z, "cutoff_T": spec.cutoff_T, "node_count": spec.node_count})
            outputs = {
                "value": result.value,
                "error_estimate": result.error_estimate,
                "tail_estimate": result.tail_estimate,
                "residual": result.residual,
                "nodes_used": result.nodes_used,
            }
            return RunReport(command="borel", inputs=inputs, outputs=outputs), True

        g = inverse_borel_coeff(f) if args.inverse else borel(f)
        if args.inverse and args.example in ("fp", "exp_power"):
            # the coefficient inverse of these examples is their formal counterpart
            counterpart = borel_counterpart(ExampleId(args.example, args.p), f.order)
            g = g.with_label(counterpart.label, counterpart.divergent)
        if g.divergent:
            warnings.append(f"series is {DIVERGENT_MARKER}")
        inputs["inverse"] = args.inverse
        outputs = {"label": g.label, "order": g.order}
        if args.out:
            outputs["path"] = self.emit_series(g, args.out)
        else:
            outputs["series"] = series_to_dict(g)
        return RunReport(command="borel", inputs=inputs, outputs=outputs, warnings=warnings), True

    def example(self, args) -> Tuple[RunReport, bool]:
        f = build(ExampleId(args.name, args.p, args.order))
        path = self.emit_series(f, args.out)
        inputs = {"name": args.name, "p": args.p, "order": args.order}
        return RunReport(command="example", inputs=inputs, outputs={"label": f.label, "path": path}), True

    def verify(self, args) -> Tuple[RunReport, bool]:
        rows = run_suites(args.suite, args.seed, self.threads(args))
        passed = all(row["passed"] for row in rows)
        table = rows_csv(rows)
        if args.report:
            path = Path(args.report)
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(table)
            logger.info(f"Wrote {len(rows)} rows to {path}")
        self.stdout.write(table)
        outputs = {"checks": len(rows), "failed": sum(1 for row in rows if not row["passed"])}
        return RunReport(command="verify", inputs={"suite": args.suite, "seed": args.seed}, outputs=outputs), passed

    def dispatch(self, args) -> Tuple[RunReport, bool]:
        return getattr(self, args.command)(args)


def _writes_own_output(args) -> bool:
    return args.command == "verify" or getattr(args, "out", None) in _STDOUT_TARGETS


def write_report(report: RunReport, as_csv: bool, stdout: TextIO):
    stdout.write(report.to_csv() if as_csv else report.to_json())


def run(argv: Optional[List[str]] = None, stdout: Optional[TextIO] = None) -> int:
    """Parse argv, run one command and return its exit code"""
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        parser.print_usage(sys.stderr)
        print(f"tdom: error: {e}", file=sys.stderr)
        return EXIT_USAGE

    try:
        settings = get_settings()
    except ValueError as e:
        print(f"tdom: invalid settings: {e}", file=sys.stderr)
        return EXIT_USAGE
    setup_logging(settings)

    commands = TdomCommands(settings, stdout)
    as_csv = getattr(args, "csv", False)
    try:
        report, certified = commands.dispatch(args)
    except TdomError as e:
        logger.error(f"{args.command} failed: {e}")
        failure = RunReport(command=args.command, inputs=vars_of(args), outputs={"success": False, "error": str(e)})
        write_report(failure, as_csv, stdout)
        if isinstance(e, UsageError):
            return EXIT_USAGE
        return EXIT_UNCERTIFIED if isinstance(e, UncertifiedResult) else EXIT_CONTRACT

    if _writes_own_output(args):
        logger.info(report.to_json().rstrip())
    else:
        write_report(report, as_csv, stdout)
    return EXIT_OK if certified else EXIT_UNCERTIFIED


def vars_of(args) -> Dict[str, Any]:
    return {k: v for k, v in sorted(vars(args).items()) if k not in ("command", "csv") and v is not None}


def main() -> int:
    return run(sys.argv[1:])


if __name__ == "__main__":
    sys.exit(main())
