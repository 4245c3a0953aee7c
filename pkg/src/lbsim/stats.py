"""Batch-means output analysis and run-length control."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

from ._ttable import T_TABLE, Z_TABLE

SUPPORTED_CONFIDENCE = tuple(sorted(T_TABLE))


class InsufficientDataError(ValueError):
    """Fewer than two batch means are available."""


def t_quantile(dof: int, confidence: float) -> float:
    """Two-sided critical value from the embedded table."""
    key = _confidence_key(confidence)
    if dof < 1:
        raise ValueError("degrees of freedom must be >= 1")
    table = T_TABLE[key]
    if dof <= len(table):
        return table[dof - 1]
    return Z_TABLE[key]


def _confidence_key(confidence: float) -> float:
    for c in SUPPORTED_CONFIDENCE:
        if abs(c - confidence) < 1e-12:
            return c
    raise ValueError(
        f"confidence {confidence!r} not in table; supported: {', '.join(map(str, SUPPORTED_CONFIDENCE))}")


@dataclass(frozen=True)
class PrecisionTarget:
    """Stop rule: ``halfwidth <= relative_halfwidth * mean`` once enough batches exist.

    The default batch size and batch floor are conventional choices for
    steady-state batch means; both are exposed on the command line.
    """

    confidence: float = 0.95
    relative_halfwidth: float = 0.01
    min_batches: int = 30
    batch_size: int = 2000

    def __post_init__(self):
        _confidence_key(self.confidence)
        if not self.relative_halfwidth > 0:
            raise ValueError("relative_halfwidth must be positive")
        if self.min_batches < 10:
            raise ValueError("min_batches must be >= 10")
        if self.batch_size < 1:
            raise ValueError("batch_size must be >= 1")


@dataclass
class BatchAccumulator:
    """Groups consecutive responses into fixed-size batches.

    The first completed batch is dropped as warm-up.
    """

    batch_size: int
    current_batch_sum: float = 0.0
    current_batch_count: int = 0
    batch_means: list[float] = field(default_factory=list)
    discarded_warmup: bool = False
    warmup_sum: float = 0.0
    n_recorded: int = 0
    total: float = 0.0
    # Welford running moments of batch_means, for cheap stop checks
    _bm_mean: float = field(default=0.0, repr=False)
    _bm_m2: float = field(default=0.0, repr=False)

    def record(self, response_s: float) -> bool:
        """Add one response; returns True when this closed a retained batch."""
        if response_s < 0:
            raise ValueError(f"negative response time {response_s!r}")
        self.n_recorded += 1
        self.total += response_s
        self.current_batch_sum += response_s
        self.current_batch_count += 1
        if self.current_batch_count < self.batch_size:
            return False
        s = self.current_batch_sum
        self.current_batch_sum = 0.0
        self.current_batch_count = 0
        if not self.discarded_warmup:
            self.discarded_warmup = True
            self.warmup_sum = s
            return False
        x = s / self.batch_size
        self.batch_means.append(x)
        d = x - self._bm_mean
        self._bm_mean += d / len(self.batch_means)
        self._bm_m2 += d * (x - self._bm_mean)
        return True

    @property
    def n_batches(self) -> int:
        return len(self.batch_means)

    def overall_mean(self) -> float:
        """Mean of every recorded response, warm-up included."""
        return self.total / self.n_recorded if self.n_recorded else math.nan


def record_response(acc: BatchAccumulator, response_s: float) -> BatchAccumulator:
    acc.record(response_s)
    return acc


def ci_halfwidth(batch_means: Sequence[float], confidence: float = 0.95) -> tuple[float, float]:
    """Return ``(mean, halfwidth)`` of the t-interval over batch means."""
    n = len(batch_means)
    if n < 2:
        raise InsufficientDataError(f"need at least 2 batch means, have {n}")
    mean = math.fsum(batch_means) / n
    var = math.fsum((x - mean) ** 2 for x in batch_means) / (n - 1)
    return mean, t_quantile(n - 1, confidence) * math.sqrt(var / n)


def should_stop(acc: BatchAccumulator, target: PrecisionTarget) -> bool:
    n = acc.n_batches
    if n < max(target.min_batches, 2):
        return False
    approx_hw = t_quantile(n - 1, target.confidence) * math.sqrt(acc._bm_m2 / (n - 1) / n)
    if approx_hw > 1.001 * target.relative_halfwidth * acc._bm_mean:
        return False
    mean, hw = ci_halfwidth(acc.batch_means, target.confidence)
    return mean > 0 and hw <= target.relative_halfwidth * mean


def utilization(busy_time_s: float, sim_time_s: float) -> float:
    if not sim_time_s > 0:
        raise ValueError("sim_time_s must be positive")
    if busy_time_s < 0 or busy_time_s > sim_time_s * (1 + 1e-12):
        raise ValueError(f"busy time {busy_time_s} outside [0, {sim_time_s}]")
    return min(busy_time_s / sim_time_s, 1.0)
