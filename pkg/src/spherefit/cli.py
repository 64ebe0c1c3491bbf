"""Command-line interface.

Exit codes: 0 success, 1 internal error, 2 input/usage error,
3 fit or geometry error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import __version__
from .baseline import IterativeConfig, fit_eberly
from .core import SphereParams, fit_exact
from .datagen import NOISE_MODELS, CaseConfig, builtin_case, generate, read_points_csv, write_points_csv
from .errors import InvalidInputError, SphereFitError
from .evaluation import (
    METHODS,
    bench_timing,
    format_paper_tables,
    rows_to_csv,
    rows_to_json,
    run_case,
)

EXIT_OK, EXIT_INTERNAL, EXIT_INPUT, EXIT_FIT = 0, 1, 2, 3

log = logging.getLogger("spherefit")


def _int_list(text):
    try:
        vals = [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not vals:
        raise argparse.ArgumentTypeError("empty list")
    return vals


def _float_list(n):
    def parse(text):
        try:
            vals = [float(v) for v in text.split(",")]
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected {n} comma-separated numbers, got {text!r}")
        if len(vals) != n:
            raise argparse.ArgumentTypeError(f"expected {n} comma-separated numbers, got {text!r}")
        return vals
    return parse


def _methods(text):
    vals = [v.strip() for v in text.split(",") if v.strip()]
    bad = [v for v in vals if v not in METHODS]
    if bad or not vals:
        raise argparse.ArgumentTypeError(
            f"methods must be a comma-separated subset of {','.join(METHODS)}, got {text!r}")
    return vals


def _positive_int(text):
    try:
        val = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if val < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {val}")
    return val


def _positive_float(text):
    try:
        val = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}")
    if not val > 0:
        raise argparse.ArgumentTypeError(f"must be > 0, got {val}")
    return val


def _nonneg_float(text):
    try:
        val = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}")
    if not val >= 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {val}")
    return val


def _case_index(text):
    try:
        val = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a case number 1..4, got {text!r}")
    if val not in (1, 2, 3, 4):
        raise argparse.ArgumentTypeError(f"case must be 1..4, got {val}")
    return val


def _case_list(text):
    vals = _int_list(text)
    for v in vals:
        _case_index(str(v))
    return vals


def _add_iter_flags(p):
    p.add_argument("--tol", type=_positive_float, default=1e-4,
                   help="iterative method: center-step tolerance (default 1e-4)")
    p.add_argument("--max-iter", type=_positive_int, default=25,
                   help="iterative method: iteration budget (default 25)")


def _add_noise_flags(p):
    p.add_argument("--noise", type=_nonneg_float, default=None,
                   help="noise level epsilon (overrides the case default)")
    p.add_argument("--noise-model", choices=NOISE_MODELS, default="uniform")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spherefit", description="Closed-form and iterative sphere fitting.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fit", help="fit a sphere to an x,y,z CSV file")
    p.add_argument("input", type=Path)
    p.add_argument("--method", choices=METHODS, default="exact")
    _add_iter_flags(p)

    p = sub.add_parser("generate", help="write a synthetic point cloud as CSV")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--case", type=_case_index, help="built-in case 1..4")
    src.add_argument("--params", type=_float_list(4), metavar="X0,Y0,Z0,R")
    p.add_argument("--u-range", type=_float_list(2), metavar="UMIN,UMAX",
                   help="normalised cap range within [-1, 1]")
    p.add_argument("--n", type=_positive_int, default=100)
    p.add_argument("--seed", type=int, default=0)
    _add_noise_flags(p)
    p.add_argument("--no-header", action="store_true")
    p.add_argument("-o", "--out", type=Path, help="output CSV (default: stdout)")

    p = sub.add_parser("evaluate", help="accuracy over repeated synthetic datasets")
    p.add_argument("--case", type=_case_list, default=[1, 2, 3, 4], metavar="1,2,3,4")
    p.add_argument("--methods", type=_methods, default=["exact"])
    p.add_argument("--datasets", type=_positive_int, default=1500)
    p.add_argument("--fast", action="store_true", help="use 100 datasets")
    p.add_argument("--points", type=_positive_int, default=100)
    p.add_argument("--seed", type=int, default=0)
    _add_noise_flags(p)
    _add_iter_flags(p)
    p.add_argument("--paper-tables", action="store_true",
                   help="all four cases, both methods, 1500 x 100, printed as tables")
    p.add_argument("--format", choices=("csv", "json", "table"), default="csv")
    p.add_argument("-o", "--out", type=Path, help="report file (default: stdout)")
    p.add_argument("--figure", type=Path, help="figure path (default: next to --out)")
    p.add_argument("--no-figure", action="store_true")

    p = sub.add_parser("bench", help="time fits against the number of points")
    p.add_argument("--n-list", type=_int_list, default=[100, 300, 1000, 3000, 10000])
    p.add_argument("--reps", type=_positive_int, default=1000)
    p.add_argument("--methods", type=_methods, default=["exact", "eberly"])
    p.add_argument("--seed", type=int, default=0)
    _add_iter_flags(p)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("-o", "--out", type=Path, help="timing file (default: stdout)")
    p.add_argument("--figure", type=Path, help="figure path (default: next to --out)")
    p.add_argument("--no-figure", action="store_true")
    return parser


def cmd_fit(args) -> int:
    points = read_points_csv(args.input)
    out = {"method": args.method}
    if args.method == "exact":
        params = fit_exact(points)
    else:
        res = fit_eberly(points, IterativeConfig(args.tol, args.max_iter))
        params = res.params
    out.update(params.as_dict())
    out["n_points"] = len(points)
    if args.method == "eberly":
        out["iterations"] = res.iterations_used
        out["converged"] = res.converged
    print(json.dumps(out))
    return EXIT_OK


def _case_config(args, index, n_points) -> CaseConfig:
    overrides = {"n_points": n_points, "seed": args.seed, "noise_model": args.noise_model}
    if args.noise is not None:
        overrides["epsilon"] = args.noise
    return builtin_case(index, **overrides)


def cmd_generate(args) -> int:
    if args.case is not None:
        config = _case_config(args, args.case, args.n)
    else:
        config = CaseConfig(truth=SphereParams(*args.params),
                            epsilon=0.0 if args.noise is None else args.noise,
                            n_points=args.n, seed=args.seed, noise_model=args.noise_model)
    if args.u_range is not None:
        config = config.with_(u_min=args.u_range[0], u_max=args.u_range[1])
    points = generate(config)
    if args.out is None:
        write_points_csv(sys.stdout, points, header=not args.no_header)
    else:
        write_points_csv(args.out, points, header=not args.no_header)
        log.info("wrote %d points to %s", len(points), args.out)
    return EXIT_OK


def _emit(text, out):
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text)


def _figure_path(args):
    if args.no_figure:
        return None
    if args.figure is not None:
        return args.figure
    if args.out is not None:
        return args.out.with_suffix(".png")
    return None


def cmd_evaluate(args) -> int:
    cases, methods, datasets = args.case, args.methods, args.datasets
    if args.fast:
        datasets = 100
    if args.paper_tables:
        cases, methods, datasets = [1, 2, 3, 4], list(METHODS), 1500
        args.points = 100
        if args.format == "csv" and args.out is None:
            args.format = "table"
    iter_config = IterativeConfig(args.tol, args.max_iter)
    reports = []
    for case in cases:
        config = _case_config(args, case, args.points)
        for method in methods:
            log.info("case %s, %s, %d datasets", case, method, datasets)
            reports.append(run_case(config, method, datasets, iter_config, case_id=case))

    rows = [r.to_row() for r in reports]
    if args.format == "json":
        text = rows_to_json(rows) + "\n"
    elif args.format == "table":
        text = format_paper_tables(reports)
    else:
        text = rows_to_csv(rows)
    _emit(text, args.out)

    fig = _figure_path(args)
    if fig is not None:
        from .plotting import plot_case_reports
        plot_case_reports(reports, fig)
    return EXIT_OK


def cmd_bench(args) -> int:
    iter_config = IterativeConfig(args.tol, args.max_iter)
    records = []
    for method in args.methods:
        log.info("timing %s over N=%s", method, args.n_list)
        records.extend(bench_timing(method, args.n_list, args.reps, iter_config, seed=args.seed))
    rows = [r.to_row() for r in records]
    text = rows_to_json(rows) + "\n" if args.format == "json" else rows_to_csv(rows)
    _emit(text, args.out)

    fig = _figure_path(args)
    if fig is not None:
        from .plotting import plot_timing
        plot_timing(records, fig)
    return EXIT_OK


COMMANDS = {"fit": cmd_fit, "generate": cmd_generate, "evaluate": cmd_evaluate, "bench": cmd_bench}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except InvalidInputError as exc:
        print(f"spherefit: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except SphereFitError as exc:
        print(f"spherefit: fit failed: {exc}", file=sys.stderr)
        return EXIT_FIT
    except Exception as exc:  # noqa: BLE001
        log.exception("internal error")
        print(f"spherefit: internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
