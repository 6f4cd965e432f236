"""Command line interface.

    schattenkit verify --suite schatten --dims 2,3,4 --trials 100 --seed 7
    schattenkit divergence --rho rho.json --sigma sigma.json --p 2
    schattenkit kernel --theta 0.5 --t 0.0

Exit codes: 0 = pass, 1 = a violation was found, 2 = configuration or
parse error.
"""

from __future__ import annotations

import argparse
import sys

from .errors import SchattenKitError
from .harness import SuiteConfig, run_suite, suite_names
from .matio import format_float, load_matrix, save_report
from .renyi import sandwiched_divergence, state_pair
from .strip import QuadratureSpec, hirschman_kernel


def _parse_floats(text: str) -> tuple[float, ...]:
    out = []
    for piece in text.split(","):
        piece = piece.strip()
        if piece in ("inf", "Infinity"):
            out.append(float("inf"))
        else:
            out.append(float(piece))
    return tuple(out)


def _parse_ints(text: str) -> tuple[int, ...]:
    return tuple(int(piece) for piece in text.split(","))


def _parse_tol(pairs: list[str]) -> dict:
    overrides = {}
    for item in pairs:
        if "=" not in item:
            raise ValueError(f"--tol expects key=value, got {item!r}")
        key, value = item.split("=", 1)
        overrides[key.strip()] = float(value)
    return overrides


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="schattenkit")
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="run a randomized verification suite")
    verify.add_argument("--suite", required=True, choices=suite_names())
    verify.add_argument("--dims", default="2,3,4", type=_parse_ints)
    verify.add_argument("--trials", default=100, type=int)
    verify.add_argument("--seed", default=0, type=int)
    verify.add_argument("--p-grid", default=None, type=_parse_floats)
    verify.add_argument("--tol", action="append", default=[], metavar="KEY=VAL")
    verify.add_argument("--quad-half-width", default=8.0, type=float)
    verify.add_argument("--quad-step", default=1.0 / 64.0, type=float)
    verify.add_argument("--out", default=None, help="write the JSON report here")

    div = sub.add_parser("divergence", help="sandwiched p-Renyi divergence of two states")
    div.add_argument("--rho", required=True)
    div.add_argument("--sigma", required=True)
    div.add_argument("--p", required=True, type=float)

    kern = sub.add_parser("kernel", help="evaluate the strip averaging kernel")
    kern.add_argument("--theta", required=True, type=float)
    kern.add_argument("--t", required=True, type=float)

    return parser


def _cmd_verify(args) -> int:
    cfg = SuiteConfig(
        suite=args.suite,
        dims=tuple(args.dims),
        trials=args.trials,
        seed=args.seed,
        p_grid=args.p_grid,
        tolerance_overrides=_parse_tol(args.tol),
        quadrature=QuadratureSpec(half_width=args.quad_half_width, step=args.quad_step),
    )
    report = run_suite(cfg)
    print(
        f"suite={report.suite} pass={report.passed} "
        f"max_violation={format_float(report.max_violation)} "
        f"tolerance={format_float(report.tolerance)} "
        f"records={len(report.records)} wall_time={report.wall_time:.3f}s"
    )
    if args.out:
        save_report(report.to_obj(), args.out)
    return 0 if report.passed else 1


def _cmd_divergence(args) -> int:
    rho = load_matrix(args.rho)
    sigma = load_matrix(args.sigma)
    value = sandwiched_divergence(state_pair(rho, sigma), args.p)
    print(format_float(value))
    return 0


def _cmd_kernel(args) -> int:
    print(format_float(float(hirschman_kernel(args.theta, args.t))))
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        if args.command == "verify":
            return _cmd_verify(args)
        if args.command == "divergence":
            return _cmd_divergence(args)
        return _cmd_kernel(args)
    except (SchattenKitError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
