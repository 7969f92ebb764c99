"""Command line front end: estimate, classify, simulate, bench."""

from __future__ import annotations

import argparse
import json
import sys

from .errors import (
    ConfigInvalid,
    DegenerateConfiguration,
    ParseError,
    TooFewPoints,
    TwoViewError,
)
from .harness import ScenarioConfig, bench_timings, format_bench_csv, format_grid_csv, run_grid
from .motion import DEFAULT_DELTA_PRI
from .pipeline import estimate_relative_pose
from .reporting import (
    build_report,
    read_correspondences,
    read_intrinsics,
    read_key_values,
    report_json,
    report_points_csv,
)

EXIT_OK = 0
EXIT_BAD_INPUT = 2
EXIT_UNSOLVABLE = 3

_ERROR_CODES = {
    TooFewPoints: "too_few_points",
    DegenerateConfiguration: "degenerate_configuration",
    ParseError: "parse_error",
    ConfigInvalid: "config_invalid",
}


def _emit(text: str, output: str | None) -> None:
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def _emit_error(exc: TwoViewError) -> None:
    code = _ERROR_CODES.get(type(exc), "error")
    sys.stdout.write(json.dumps({"error": code, "message": str(exc)}) + "\n")


def _load_correspondences(args):
    intr = read_intrinsics(args.intrinsics) if args.intrinsics else None
    return read_correspondences(args.correspondences, intr, normalized=args.normalized)


def _cmd_estimate(args) -> int:
    corr = _load_correspondences(args)
    outcome = estimate_relative_pose(corr, delta_pri=args.delta_pri, delta_theta=args.delta_theta)
    report = build_report(outcome)
    text = report_points_csv(report) if args.csv else report_json(report)
    _emit(text, args.output)
    return EXIT_OK


def _cmd_classify(args) -> int:
    corr = _load_correspondences(args)
    outcome = estimate_relative_pose(corr, delta_pri=args.delta_pri, delta_theta=args.delta_theta)
    label = outcome.classification
    text = json.dumps(
        {
            "motion_label": label.label,
            "pri": label.pri,
            "m3": label.m3,
            "delta_pri": label.delta_pri,
            "delta_theta": label.delta_theta,
        },
        indent=2,
    )
    _emit(text, args.output)
    return EXIT_OK


_CONFIG_FIELDS = {
    "d": float,
    "n_pts": int,
    "n_scenes": int,
    "n_mc": int,
    "alpha_min": float,
    "alpha_max": float,
    "alpha_steps": int,
    "noise_min": float,
    "noise_max": float,
    "noise_steps": int,
    "t_max": float,
    "seed": int,
}


def _scenario_from_args(args) -> ScenarioConfig:
    """Build the sweep config: file values first, explicit flags override."""
    values = {}
    if args.config:
        raw = read_key_values(args.config)
        unknown = raw.keys() - _CONFIG_FIELDS.keys()
        if unknown:
            raise ConfigInvalid(f"unknown config keys {sorted(unknown)}")
        for key, text in raw.items():
            try:
                values[key] = _CONFIG_FIELDS[key](text)
            except ValueError as exc:
                raise ConfigInvalid(f"config key {key}: {exc}") from exc
    for key in _CONFIG_FIELDS:
        flag = getattr(args, key)
        if flag is not None:
            values[key] = flag
    return ScenarioConfig(**values)


def _cmd_simulate(args) -> int:
    cfg = _scenario_from_args(args)
    records = run_grid(cfg, workers=args.workers)
    _emit(format_grid_csv(records), args.output)
    if args.output:
        sys.stdout.write(f"wrote {len(records)} rows to {args.output}\n")
    return EXIT_OK


def _cmd_bench(args) -> int:
    try:
        counts = [int(c) for c in args.points.split(",") if c.strip()]
    except ValueError as exc:
        raise ConfigInvalid(f"bad point counts: {exc}") from exc
    records = bench_timings(counts, reps=args.reps, seed=args.seed or 0)
    _emit(format_bench_csv(records), args.output)
    return EXIT_OK


def _add_estimate_arguments(sub) -> None:
    sub.add_argument("correspondences", help="text file, one 'x1 y1 x2 y2' pair per line")
    sub.add_argument("--intrinsics", help="key=value file with fx, fy, cx, cy")
    sub.add_argument(
        "--normalized",
        action="store_true",
        help="inputs are calibrated coordinates, not pixels",
    )
    sub.add_argument("--delta-pri", type=float, default=DEFAULT_DELTA_PRI, dest="delta_pri")
    sub.add_argument("--delta-theta", type=float, default=None, dest="delta_theta")
    sub.add_argument("--output", help="write to this file instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="twoview",
        description="Two-view relative pose from point correspondences",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    est = subs.add_parser("estimate", help="full pose/depth report for one pair file")
    _add_estimate_arguments(est)
    est.add_argument("--csv", action="store_true", help="emit per-point rows instead of the report")
    est.set_defaults(func=_cmd_estimate)

    cls = subs.add_parser("classify", help="motion label only")
    _add_estimate_arguments(cls)
    cls.set_defaults(func=_cmd_classify)

    sim = subs.add_parser("simulate", help="Monte Carlo grid sweep to CSV")
    sim.add_argument("--config", help="key=value file with any of the grid settings")
    sim.add_argument("--seed", type=int, default=None)
    sim.add_argument("--alpha-min", type=float, default=None, dest="alpha_min")
    sim.add_argument("--alpha-max", type=float, default=None, dest="alpha_max")
    sim.add_argument("--alpha-steps", type=int, default=None, dest="alpha_steps")
    sim.add_argument("--noise-min", type=float, default=None, dest="noise_min")
    sim.add_argument("--noise-max", type=float, default=None, dest="noise_max")
    sim.add_argument("--noise-steps", type=int, default=None, dest="noise_steps")
    sim.add_argument("--d", type=float, default=None)
    sim.add_argument("--n-pts", type=int, default=None, dest="n_pts")
    sim.add_argument("--n-scenes", type=int, default=None, dest="n_scenes")
    sim.add_argument("--n-mc", type=int, default=None, dest="n_mc")
    sim.add_argument("--t-max", type=float, default=None, dest="t_max")
    sim.add_argument("--workers", type=int, default=1)
    sim.add_argument("--output", help="CSV path (default stdout)")
    sim.set_defaults(func=_cmd_simulate)

    ben = subs.add_parser("bench", help="identification timing study to CSV")
    ben.add_argument("--points", default="100,200,500,1000", help="comma-separated point counts")
    ben.add_argument("--reps", type=int, default=20)
    ben.add_argument("--seed", type=int, default=0)
    ben.add_argument("--output", help="CSV path (default stdout)")
    ben.set_defaults(func=_cmd_bench)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, ConfigInvalid, FileNotFoundError) as exc:
        if isinstance(exc, FileNotFoundError):
            exc = ParseError(str(exc))
        _emit_error(exc)
        return EXIT_BAD_INPUT
    except (TooFewPoints, DegenerateConfiguration) as exc:
        _emit_error(exc)
        return EXIT_UNSOLVABLE


if __name__ == "__main__":
    sys.exit(main())
