"""Factorial experiment grids: config parsing, expansion, execution, CSV output."""

from __future__ import annotations

import csv
import hashlib
import io
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import IO, Iterable, Mapping, Sequence

from .engine import Scenario, run
from .stats import PrecisionTarget
from .strategies import STALE_TOKENS, STRATEGY_TOKENS

CSV_HEADER = ("strategy", "n_servers", "workload", "stale_period_s", "seed", "mean_response_s",
              "ci_halfwidth_s", "mean_utilization", "jobs_completed", "broken", "sim_time_s")
MAX_WORKLOAD = 0.99


class ConfigError(ValueError):
    """Invalid experiment configuration."""


class UnknownStrategyError(ConfigError):
    pass


class WorkloadRangeError(ConfigError):
    pass


class StalePeriodError(ConfigError):
    pass


class MissingStalePeriodError(ConfigError):
    pass


@dataclass(frozen=True)
class Cell:
    strategy: str
    workload: float
    stale_period_s: float | None = None


@dataclass
class ExperimentGrid:
    strategies: list[str]
    workloads: list[float]
    stale_periods_s: list[float] = field(default_factory=list)
    replications: int = 1
    base_seed: int = 0
    precision: PrecisionTarget = field(default_factory=PrecisionTarget)
    n_servers: int = 5
    service_mean: float = 1.0
    queue_break_threshold: int = 200

    def validate(self) -> "ExperimentGrid":
        if not self.strategies:
            raise ConfigError("at least one strategy is required")
        for s in self.strategies:
            if s not in STRATEGY_TOKENS:
                raise UnknownStrategyError(
                    f"unknown strategy {s!r}; expected one of {', '.join(STRATEGY_TOKENS)}")
        if not self.workloads:
            raise ConfigError("at least one workload is required")
        for w in self.workloads:
            if not 0 <= w <= MAX_WORKLOAD:
                raise WorkloadRangeError(f"workload {w} outside [0, {MAX_WORKLOAD}]")
        for t in self.stale_periods_s:
            if not t > 0:
                raise StalePeriodError(f"stale period must be positive, got {t}")
        if STALE_TOKENS.intersection(self.strategies) and not self.stale_periods_s:
            raise MissingStalePeriodError("stale period required for ssq/hsq")
        if self.replications < 1:
            raise ConfigError("replications must be >= 1")
        if self.n_servers < 1:
            raise ConfigError("servers must be >= 1")
        if not self.service_mean > 0:
            raise ConfigError("service mean must be positive")
        if self.queue_break_threshold < 1:
            raise ConfigError("queue break threshold must be >= 1")
        return self

    def cells(self) -> list[Cell]:
        out = []
        for s in self.strategies:
            for w in self.workloads:
                if s in STALE_TOKENS:
                    out.extend(Cell(s, w, t) for t in self.stale_periods_s)
                else:
                    out.append(Cell(s, w))
        return out


def stable_hash(cell: Cell, replication: int) -> int:
    key = f"{cell.strategy}|{cell.workload!r}|{cell.stale_period_s!r}|{replication}".encode()
    return int.from_bytes(hashlib.blake2b(key, digest_size=8).digest(), "little")


def replication_seed(base_seed: int, cell: Cell, replication: int) -> int:
    return (base_seed + stable_hash(cell, replication)) % (1 << 64)


# -- config parsing --------------------------------------------------------

_LIST_KEYS = {"strategies", "workloads", "stale_periods"}
_KEY_ALIASES = {
    "strategy": "strategies", "workload": "workloads", "stale_period": "stale_periods",
    "stale_periods_s": "stale_periods", "base_seed": "seed", "n_servers": "servers",
    "queue_break_threshold": "queue_break",
}
_KNOWN_KEYS = _LIST_KEYS | {"servers", "service_mean", "seed", "replications", "confidence",
                            "rel_precision", "batch_size", "min_batches", "queue_break"}


def normalize_key(key: str) -> str:
    key = key.strip().lower().replace("-", "_")
    return _KEY_ALIASES.get(key, key)


def read_config_file(path: str | os.PathLike) -> dict[str, str]:
    """Read flat ``key=value`` lines; ``#`` starts a comment."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror or exc}") from exc
    values: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key=value, got {raw.strip()!r}")
        k, v = line.split("=", 1)
        values[normalize_key(k)] = v.strip()
    return values


def _split(v: str) -> list[str]:
    return [x.strip() for x in v.split(",") if x.strip()]


def _num(key: str, v: str, kind=float):
    try:
        return kind(v)
    except ValueError:
        raise ConfigError(f"{key}: cannot parse {v!r} as {kind.__name__}") from None


def parse_config(path: str | os.PathLike | None = None,
                 overrides: Mapping[str, str | None] | None = None) -> ExperimentGrid:
    """Build a validated grid from a config file and/or flag values.

    ``overrides`` holds raw string values keyed like the config file; entries
    that are ``None`` are ignored, everything else wins over the file.
    """
    values = read_config_file(path) if path is not None else {}
    for k, v in (overrides or {}).items():
        if v is not None:
            values[normalize_key(k)] = str(v)
    unknown = set(values) - _KNOWN_KEYS
    if unknown:
        raise ConfigError(f"unknown config key(s): {', '.join(sorted(unknown))}")

    strategies = [s.lower() for s in _split(values.get("strategies", ""))]
    workloads = [_num("workloads", x) for x in _split(values.get("workloads", ""))]
    stale = [_num("stale_periods", x) for x in _split(values.get("stale_periods", ""))]
    defaults = PrecisionTarget()
    try:
        precision = PrecisionTarget(
            confidence=_num("confidence", values.get("confidence", str(defaults.confidence))),
            relative_halfwidth=_num("rel_precision", values.get("rel_precision", str(defaults.relative_halfwidth))),
            min_batches=_num("min_batches", values.get("min_batches", str(defaults.min_batches)), int),
            batch_size=_num("batch_size", values.get("batch_size", str(defaults.batch_size)), int),
        )
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    grid = ExperimentGrid(
        strategies=strategies,
        workloads=workloads,
        stale_periods_s=stale,
        replications=_num("replications", values.get("replications", "1"), int),
        base_seed=_num("seed", values.get("seed", "0"), int),
        precision=precision,
        n_servers=_num("servers", values.get("servers", "5"), int),
        service_mean=_num("service_mean", values.get("service_mean", "1.0")),
        queue_break_threshold=_num("queue_break", values.get("queue_break", "200"), int),
    )
    return grid.validate()


# -- execution -------------------------------------------------------------

@dataclass
class CsvRow:
    strategy: str
    n_servers: int
    workload: float
    stale_period_s: float | None
    seed: int
    mean_response_s: float
    ci_halfwidth_s: float
    mean_utilization: float
    jobs_completed: int
    broken: bool
    sim_time_s: float

    def to_fields(self) -> list[str]:
        return [
            self.strategy,
            str(self.n_servers),
            _fmt(self.workload),
            "" if self.stale_period_s is None else _fmt(self.stale_period_s),
            str(self.seed),
            _fmt(self.mean_response_s),
            _fmt(self.ci_halfwidth_s),
            _fmt(self.mean_utilization),
            str(self.jobs_completed),
            "true" if self.broken else "false",
            _fmt(self.sim_time_s),
        ]


def _fmt(x: float) -> str:
    return "nan" if math.isnan(x) else f"{x:.6f}"


def scenario_for(grid: ExperimentGrid, cell: Cell, seed: int) -> Scenario:
    return Scenario(
        workload=cell.workload,
        n_servers=grid.n_servers,
        service_mean=grid.service_mean,
        stale_period=cell.stale_period_s,
        queue_break_threshold=grid.queue_break_threshold,
        master_seed=seed,
    )


def run_cell(grid: ExperimentGrid, cell: Cell, seed: int) -> CsvRow:
    res = run(scenario_for(grid, cell, seed), cell.strategy, grid.precision)
    return CsvRow(
        strategy=cell.strategy,
        n_servers=grid.n_servers,
        workload=cell.workload,
        stale_period_s=cell.stale_period_s,
        seed=seed,
        mean_response_s=res.mean_response_s,
        ci_halfwidth_s=res.ci_halfwidth_s,
        mean_utilization=res.mean_utilization,
        jobs_completed=res.jobs_completed,
        broken=res.broken,
        sim_time_s=res.sim_time_s,
    )


def _run_task(args) -> CsvRow:
    return run_cell(*args)


def tasks(grid: ExperimentGrid) -> list[tuple[ExperimentGrid, Cell, int]]:
    out = []
    seen: dict[int, tuple[Cell, int]] = {}
    for cell in grid.cells():
        for r in range(grid.replications):
            seed = replication_seed(grid.base_seed, cell, r)
            if seed in seen:
                raise ConfigError(f"seed collision between {seen[seed]} and {(cell, r)}")
            seen[seed] = (cell, r)
            out.append((grid, cell, seed))
    return out


def run_grid(grid: ExperimentGrid, parallel: int = 1) -> list[CsvRow]:
    """Execute every cell x replication; rows come back in cell-major order."""
    work = tasks(grid)
    if parallel > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=parallel) as pool:
            return list(pool.map(_run_task, work))
    return [_run_task(t) for t in work]


# -- output ----------------------------------------------------------------

def write_csv(rows: Iterable[CsvRow], stream: IO[str]) -> None:
    w = csv.writer(stream, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for row in rows:
        w.writerow(row.to_fields())


def emit_csv(rows: Iterable[CsvRow], destination: str | os.PathLike | IO[str]) -> None:
    if hasattr(destination, "write"):
        write_csv(rows, destination)
        return
    try:
        with open(destination, "w", encoding="utf-8", newline="") as fh:
            write_csv(rows, fh)
    except OSError as exc:
        raise OSError(exc.errno, f"cannot write CSV to {destination}: {exc.strerror}") from exc


def csv_text(rows: Iterable[CsvRow]) -> str:
    buf = io.StringIO()
    write_csv(rows, buf)
    return buf.getvalue()


def read_csv(path: str | os.PathLike) -> list[CsvRow]:
    """Parse a file written by :func:`emit_csv` back into rows."""
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        if tuple(reader.fieldnames or ()) != CSV_HEADER:
            raise ValueError(f"{path}: unexpected header {reader.fieldnames}")
        return [CsvRow(
            strategy=d["strategy"],
            n_servers=int(d["n_servers"]),
            workload=float(d["workload"]),
            stale_period_s=float(d["stale_period_s"]) if d["stale_period_s"] else None,
            seed=int(d["seed"]),
            mean_response_s=float(d["mean_response_s"]),
            ci_halfwidth_s=float(d["ci_halfwidth_s"]),
            mean_utilization=float(d["mean_utilization"]),
            jobs_completed=int(d["jobs_completed"]),
            broken=d["broken"] == "true",
            sim_time_s=float(d["sim_time_s"]),
        ) for d in reader]


@dataclass
class CellSummary:
    cell: Cell
    replications: int
    broken: int
    mean_response_s: float
    min_response_s: float
    max_response_s: float


def summarize(rows: Sequence[CsvRow]) -> list[CellSummary]:
    """Replication averages per cell; broken runs are counted but not averaged."""
    groups: dict[Cell, list[CsvRow]] = {}
    for r in rows:
        groups.setdefault(Cell(r.strategy, r.workload, r.stale_period_s), []).append(r)
    out = []
    for cell, rs in groups.items():
        ok = [r.mean_response_s for r in rs if not r.broken]
        out.append(CellSummary(
            cell=cell,
            replications=len(rs),
            broken=len(rs) - len(ok),
            mean_response_s=sum(ok) / len(ok) if ok else math.nan,
            min_response_s=min(ok) if ok else math.nan,
            max_response_s=max(ok) if ok else math.nan,
        ))
    return out


def format_summary(rows: Sequence[CsvRow]) -> str:
    lines = [f"{'strategy':<8} {'workload':>8} {'stale_s':>8} {'reps':>4} {'broken':>6} "
             f"{'mean_resp_s':>12} {'min':>10} {'max':>10}"]
    for s in summarize(rows):
        t = "-" if s.cell.stale_period_s is None else f"{s.cell.stale_period_s:g}"
        lines.append(f"{s.cell.strategy:<8} {s.cell.workload:>8.3f} {t:>8} {s.replications:>4} "
                     f"{s.broken:>6} {s.mean_response_s:>12.4f} {s.min_response_s:>10.4f} "
                     f"{s.max_response_s:>10.4f}")
    return "\n".join(lines)
