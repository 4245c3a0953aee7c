"""Discrete-event comparison of load-balancing dispatch strategies."""

from .engine import Job, QueueOverflow, RunResult, Scenario, ServerState, enqueue_job, run
from .rng import RandomStream, StreamId, new_stream
from .stats import PrecisionTarget
from .strategies import STRATEGY_TOKENS, make_strategy

__all__ = [
    "Job", "PrecisionTarget", "QueueOverflow", "RandomStream", "RunResult", "STRATEGY_TOKENS",
    "Scenario", "ServerState", "StreamId", "enqueue_job", "make_strategy", "new_stream", "run",
]
