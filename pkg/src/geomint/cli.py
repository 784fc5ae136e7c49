"""Command-line front end.

    geomint simulate --config run.json [--output out.csv]
    geomint order --config run.json --steps 1e-2,5e-3,2.5e-3 [--total-time 1.0]
    geomint check --suite <name|all> [--samples 500] [--seed N]

Exit codes: 0 success, 2 config error, 3 solver failure, 4 domain
violation, 5 property-suite failure.
"""

from __future__ import annotations

import argparse
import sys

from geomint import kernels
from geomint.checks import DEFAULT_SAMPLES, SUITES, default_seed, run_suites
from geomint.config import load_config
from geomint.errors import ConfigError, OutOfDomain, SolverDiverged, StepSizeUnderflow
from geomint.harness import order_study, simulate

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_SOLVER = 3
EXIT_DOMAIN = 4
EXIT_CHECK = 5


def _step_list(text):
    try:
        steps = [float(s) for s in text.split(",") if s.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None
    if any(not s > 0.0 for s in steps):
        raise argparse.ArgumentTypeError("step sizes must be positive")
    return steps


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="geomint", description="Lie group integrators for the free rigid body.")
    p.add_argument("--backend", choices=["cython", "python"], default=None,
                   help=f"trajectory kernel backend (default: {kernels.BACKEND})")  # fmt: skip
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("simulate", help="run one configuration and write its trajectory as CSV")
    s.add_argument("--config", required=True, help="JSON run configuration")
    s.add_argument("--output", help="override the config's output path")

    o = sub.add_parser("order", help="empirical convergence order against the reference solution")
    o.add_argument("--config", required=True, help="JSON run configuration")
    o.add_argument("--steps", required=True, type=_step_list, help="comma-separated halving step sizes")
    o.add_argument("--total-time", type=float, help="simulated time (default: config total_time or step*steps)")

    c = sub.add_parser("check", help="run randomized structural property suites")
    c.add_argument("--suite", required=True, help=f"one of: {', '.join(SUITES)}, all")
    c.add_argument("--samples", type=int, default=DEFAULT_SAMPLES, help="random samples per check")
    c.add_argument("--seed", type=int, help="RNG seed (default: $GEOMINT_SEED or a fixed value)")
    c.add_argument("--quiet", action="store_true", help="only print failures and the summary")
    return p


def _err(msg):
    print(f"geomint: error: {msg}", file=sys.stderr)


def _cmd_simulate(args):
    cfg = load_config(args.config)
    path, traj = simulate(cfg, args.output, backend=args.backend)
    print(f"wrote {len(traj)} records to {path}")
    return EXIT_OK


def _cmd_order(args):
    cfg = load_config(args.config)
    report = order_study(cfg, args.steps, args.total_time, backend=args.backend)
    for line in report.lines():
        print(line)
    return EXIT_OK


def _cmd_check(args):
    if args.suite != "all" and args.suite not in SUITES:
        _err(f"unknown suite {args.suite!r}; valid suites: {', '.join(SUITES)}, all")
        return EXIT_CONFIG
    if args.samples < 1:
        _err("--samples must be at least 1")
        return EXIT_CONFIG
    try:
        seed = default_seed() if args.seed is None else args.seed
    except ValueError as exc:
        _err(str(exc))
        return EXIT_CONFIG
    results = run_suites(args.suite, args.samples, seed)
    failed = [r for r in results if not r.passed]
    for r in results:
        if not args.quiet or not r.passed:
            print(r.line())
    print(f"seed {seed}: {len(results) - len(failed)}/{len(results)} checks passed")
    return EXIT_CHECK if failed else EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handler = {"simulate": _cmd_simulate, "order": _cmd_order, "check": _cmd_check}[args.command]
    try:
        return handler(args)
    except ConfigError as exc:
        _err(str(exc))
        return EXIT_CONFIG
    except (SolverDiverged, StepSizeUnderflow) as exc:
        _err(str(exc))
        return EXIT_SOLVER
    except OutOfDomain as exc:
        _err(str(exc))
        return EXIT_DOMAIN
    except OSError as exc:
        _err(f"cannot write output: {exc}")
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
