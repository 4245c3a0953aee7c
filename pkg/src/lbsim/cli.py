"""Command-line front end: ``lbsim run`` and ``lbsim grid``."""

from __future__ import annotations

import argparse
import sys

from .engine import Scenario, run
from .experiment import (Cell, ConfigError, CsvRow, emit_csv, format_summary, parse_config,
                         run_grid, write_csv)
from .strategies import STALE_TOKENS

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_IO = 3


def _add_common(p: argparse.ArgumentParser, plural: bool) -> None:
    many = " (comma-separated list)" if plural else ""
    p.add_argument("--config", help="key=value config file; flags override its values")
    p.add_argument("--strategy", help="random, rr, usq, ssq or hsq" + many)
    p.add_argument("--workload", help="offered load lambda/(N*mu) in [0, 0.99]" + many)
    p.add_argument("--stale-period", help="seconds between snapshots, for ssq/hsq" + many)
    p.add_argument("--servers", help="number of servers (default 5)")
    p.add_argument("--service-mean", help="mean service time in seconds (default 1.0)")
    p.add_argument("--seed", help="master seed" + (" base for per-run seeds" if plural else ""))
    p.add_argument("--confidence", help="CI confidence level (default 0.95)")
    p.add_argument("--rel-precision", help="target relative CI half-width (default 0.01)")
    p.add_argument("--batch-size", help="jobs per batch (default 2000)")
    p.add_argument("--min-batches", help="batches required before stopping (default 30)")
    p.add_argument("--queue-break", help="effective length that breaks the system (default 200)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lbsim", description="Load-balancing strategy simulator (one dispatcher, N FCFS servers).")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="simulate one scenario and print its CSV row and a summary")
    _add_common(p_run, plural=False)

    p_grid = sub.add_parser("grid", help="run a full factorial grid and write CSV")
    _add_common(p_grid, plural=True)
    p_grid.add_argument("--replications", help="runs per cell (default 1)")
    p_grid.add_argument("--out", help="CSV output path (default: standard output)")
    p_grid.add_argument("--parallel", type=int, default=1, help="worker processes (default 1)")
    return parser


def _overrides(args: argparse.Namespace) -> dict[str, str | None]:
    keys = {
        "strategies": args.strategy, "workloads": args.workload, "stale_periods": args.stale_period,
        "servers": args.servers, "service_mean": args.service_mean, "seed": args.seed,
        "confidence": args.confidence, "rel_precision": args.rel_precision,
        "batch_size": args.batch_size, "min_batches": args.min_batches,
        "queue_break": args.queue_break,
    }
    if hasattr(args, "replications"):
        keys["replications"] = args.replications
    return keys


def cmd_run(args: argparse.Namespace) -> int:
    grid = parse_config(args.config, _overrides(args))
    if len(grid.strategies) != 1 or len(grid.workloads) != 1 or len(grid.stale_periods_s) > 1:
        raise ConfigError("run takes exactly one strategy, one workload and at most one stale period")
    token = grid.strategies[0]
    stale = grid.stale_periods_s[0] if token in STALE_TOKENS else None
    cell = Cell(token, grid.workloads[0], stale)
    scenario = Scenario(
        workload=cell.workload, n_servers=grid.n_servers, service_mean=grid.service_mean,
        stale_period=stale, queue_break_threshold=grid.queue_break_threshold,
        master_seed=grid.base_seed)
    res = run(scenario, token, grid.precision)
    row = CsvRow(token, grid.n_servers, cell.workload, stale, scenario.master_seed,
                 res.mean_response_s, res.ci_halfwidth_s, res.mean_utilization,
                 res.jobs_completed, res.broken, res.sim_time_s)
    write_csv([row], sys.stdout)
    print()
    print(f"strategy={token} servers={grid.n_servers} workload={cell.workload:g}"
          + (f" stale_period={stale:g}s" if stale is not None else ""))
    print(f"mean response  {res.mean_response_s:.6f} s  +/- {res.ci_halfwidth_s:.6f} "
          f"({grid.precision.confidence:.0%} CI, {res.n_batches} batches)")
    print("utilization    " + " ".join(f"{u:.4f}" for u in res.per_server_utilization))
    print(f"jobs           arrived={res.jobs_arrived} completed={res.jobs_completed} "
          f"sim_time={res.sim_time_s:.3f} s")
    if res.broken:
        print(f"BROKEN at t={res.broken_time_s:.6f} s (queue exceeded {grid.queue_break_threshold})")
    return EXIT_OK


def cmd_grid(args: argparse.Namespace) -> int:
    grid = parse_config(args.config, _overrides(args))
    if args.parallel < 1:
        raise ConfigError("--parallel must be >= 1")
    rows = run_grid(grid, parallel=args.parallel)
    if args.out:
        emit_csv(rows, args.out)
        print(format_summary(rows))
    else:
        write_csv(rows, sys.stdout)
        print(format_summary(rows), file=sys.stderr)
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    handler = cmd_run if args.command == "run" else cmd_grid
    try:
        return handler(args)
    except ConfigError as exc:
        print(f"lbsim: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"lbsim: error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
