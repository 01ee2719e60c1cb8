"""Command-line interface.

Exit codes: 0 ok, 2 unreadable or invalid input, 3 degenerate criterion
normalization, 4 failed oracle comparison, 5 Fock truncation too large.
"""

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from .conformance import DEFAULT_TOLERANCE, default_suite, oracle_compare
from .criteria import scan_combinations
from .errors import InvalidArgument, TruncationError
from .networks import (
    CONVERSION_ETA,
    MEASURED_OUTPUT_DB,
    MEASURED_SOURCE_DB,
    REFLECTION_ETA,
    PipelineConfig,
    run_squeezing_pipeline,
)
from .profiles import GridSpec, render, write_arrows_csv, write_intensity_csv, write_pgm
from .scenario import Sweep, load_scenario

EXIT_OK, EXIT_PARSE, EXIT_DEGENERATE, EXIT_CONFORMANCE, EXIT_TRUNCATION = 0, 2, 3, 4, 5

CRITERION_COLUMNS = ["sigma", "rho", "dof_a", "dof_b", "value", "alpha", "violated", "status"]


def _fmt(x):
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, float):
        return f"{x:.9g}"
    return str(x)


def _emit(records, columns, args):
    """Write records as CSV or JSON to --out or stdout."""
    if args.format == "json":
        text = json.dumps(records, indent=2, default=str) + "\n"
    else:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        for rec in records:
            writer.writerow([_fmt(rec.get(c, "")) for c in columns])
        text = buf.getvalue()
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _pipeline_columns(scenario):
    if scenario.pipeline is None:
        return {}
    res = run_squeezing_pipeline(scenario.pipeline)
    implied = res.implied_eta if res.implied_eta is not None else scenario.pipeline.eta_total
    return {"predicted_db": res.predicted_db, "implied_eta": implied}


def _scan_records(scenario):
    rows = scan_combinations(scenario.state())
    extra = _pipeline_columns(scenario)
    return rows, [{**row.as_record(), **extra} for row in rows]


def _degenerate_exit(rows, strict):
    bad = [r for r in rows if r.status != "ok"]
    if bad and (strict or len(bad) == len(rows)):
        for r in bad:
            print(f"{r.spec.sigma},{r.spec.rho} {r.spec.dof_a.value}/{r.spec.dof_b.value}: "
                  f"{r.message}", file=sys.stderr)
        return EXIT_DEGENERATE
    return EXIT_OK


def cmd_criterion(args):
    scenario = load_scenario(args.scenario)
    rows, records = _scan_records(scenario)
    columns = CRITERION_COLUMNS + (["predicted_db", "implied_eta"] if scenario.pipeline else [])
    _emit(records, columns, args)
    return _degenerate_exit(rows, args.strict)


def cmd_sweep(args):
    scenario = load_scenario(args.scenario)
    sweep = scenario.sweep
    if args.param is not None:
        if None in (args.start, args.stop, args.steps):
            raise InvalidArgument("--param needs --from, --to and --steps")
        sweep = Sweep(args.param, args.start, args.stop, args.steps)
    if sweep is None:
        raise InvalidArgument("no sweep given in the scenario or on the command line")

    all_rows, records = [], []
    for k, value in enumerate(sweep.values()):
        point = scenario.with_param(sweep.param, float(value))
        rows, recs = _scan_records(point)
        all_rows += rows
        records += [{"sweep_index": k, "param": sweep.param, "param_value": float(value), **r}
                    for r in recs]
    columns = ["sweep_index", "param", "param_value"] + CRITERION_COLUMNS
    if scenario.pipeline:
        columns += ["predicted_db", "implied_eta"]
    _emit(records, columns, args)
    return _degenerate_exit(all_rows, args.strict)


def cmd_oracle_check(args):
    scenarios = [load_scenario(p) for p in args.scenario] if args.scenario else default_suite()
    tol = args.tolerance if args.tolerance is not None else DEFAULT_TOLERANCE
    try:
        reports = [oracle_compare(sc, tol, args.dim) for sc in scenarios]
    except TruncationError as exc:
        print(f"truncation: {exc}", file=sys.stderr)
        return EXIT_TRUNCATION

    if args.format == "json":
        text = json.dumps([r.to_dict() for r in reports], indent=2) + "\n"
    else:
        text = "\n\n".join(r.table() for r in reports) + "\n"
    failed = sum(not r.passed for r in reports)
    summary = (f"{len(reports) - failed}/{len(reports)} scenarios passed at tolerance "
               f"{tol:g}; max moment difference "
               f"{max(r.max_diff() for r in reports):.3e}")
    if args.out:
        Path(args.out).write_text(text)
        print(summary)
    else:
        sys.stdout.write(text)
        print(summary, file=sys.stderr)
    return EXIT_CONFORMANCE if failed else EXIT_OK


def cmd_pipeline(args):
    if args.scenario:
        cfg = load_scenario(args.scenario).pipeline
        if cfg is None:
            raise InvalidArgument(f"{args.scenario} has no pipeline section")
    else:
        cfg = PipelineConfig(args.input_db, args.eta_conversion, args.eta_reflection,
                             args.extra_eta, args.measured_db)
    res = run_squeezing_pipeline(cfg)
    rec = {
        "input_db": cfg.input_squeezing_db,
        "eta_conversion": cfg.eta_conversion,
        "eta_reflection": cfg.eta_reflection,
        "extra_eta": cfg.extra_eta,
        "eta_total": cfg.eta_total,
        "predicted_db": res.predicted_db,
        "anti_in_db": res.anti_squeezing_in_db,
        "anti_out_db": res.anti_squeezing_out_db,
        "measured_db": cfg.measured_output_db if cfg.measured_output_db is not None else "",
        "gap_db": res.gap_db if res.gap_db is not None else "",
        "implied_eta": res.implied_eta if res.implied_eta is not None else "",
    }
    _emit([rec], list(rec), args)
    print(res.summary(), file=sys.stdout if args.out else sys.stderr)
    return EXIT_OK


def cmd_render(args):
    grid = GridSpec(args.half_width, args.samples, args.waist)
    image = render(args.family, grid)
    out = Path(args.out or f"{args.family}.pgm")
    write_pgm(out, image.intensity, binary=args.binary)
    write_arrows_csv(out.with_name(out.stem + "_arrows.csv"), image)
    if args.format == "csv":
        write_intensity_csv(out.with_name(out.stem + "_intensity.csv"), image)
    print(f"wrote {out} ({grid.samples}x{grid.samples}, {len(image.arrows)} arrows)")
    return EXIT_OK


def _global_flags(p, suppress):
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--out", default=d(None), help="output path (default: stdout)")
    p.add_argument("--format", choices=("csv", "json"), default=d("csv"))
    p.add_argument("--tolerance", type=float, default=d(None),
                   help=f"oracle comparison tolerance (default {DEFAULT_TOLERANCE:g})")
    return p


def build_parser():
    # Global flags are accepted before or after the subcommand; the
    # subcommand copies suppress their defaults so they don't clobber.
    top = _global_flags(argparse.ArgumentParser(add_help=False), suppress=False)
    common = _global_flags(argparse.ArgumentParser(add_help=False), suppress=True)

    parser = argparse.ArgumentParser(
        prog="cvstokes",
        description="Stokes-operator entanglement criteria for squeezed cylindrical modes.",
        epilog="exit codes: 0 ok, 2 parse/input error, 3 degenerate normalization, "
               "4 oracle comparison failed, 5 Fock truncation too large",
        parents=[top],
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("criterion", parents=[common], help="12-row criterion table")
    p.add_argument("scenario")
    p.add_argument("--strict", action="store_true",
                   help="exit 3 if any row has a degenerate normalization")
    p.set_defaults(func=cmd_criterion)

    p = sub.add_parser("sweep", parents=[common], help="criterion table over a parameter sweep")
    p.add_argument("scenario")
    p.add_argument("--param")
    p.add_argument("--from", dest="start", type=float)
    p.add_argument("--to", dest="stop", type=float)
    p.add_argument("--steps", type=int)
    p.add_argument("--strict", action="store_true")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("oracle-check", parents=[common],
                       help="compare moments against the Fock oracle")
    p.add_argument("scenario", nargs="*", help="scenario files (default: built-in grid)")
    p.add_argument("--dim", type=int, default=12, help="Fock truncation per mode")
    p.set_defaults(func=cmd_oracle_check)

    p = sub.add_parser("pipeline", parents=[common], help="squeezing loss-chain prediction")
    p.add_argument("scenario", nargs="?")
    p.add_argument("--input-db", type=float, default=MEASURED_SOURCE_DB)
    p.add_argument("--eta-conversion", type=float, default=CONVERSION_ETA)
    p.add_argument("--eta-reflection", type=float, default=REFLECTION_ETA)
    p.add_argument("--extra-eta", type=float, default=1.0)
    p.add_argument("--measured-db", type=float, default=MEASURED_OUTPUT_DB)
    p.set_defaults(func=cmd_pipeline)

    p = sub.add_parser("render", parents=[common], help="intensity/polarization map as PGM")
    p.add_argument("family", choices=("azimuthal", "radial"))
    p.add_argument("--samples", type=int, default=256)
    p.add_argument("--half-width", type=float, default=4.0)
    p.add_argument("--waist", type=float, default=1.0)
    p.add_argument("--binary", action="store_true", help="write P5 instead of P2")
    p.set_defaults(func=cmd_render)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InvalidArgument as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
