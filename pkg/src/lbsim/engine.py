"""Event-driven simulation of one dispatcher in front of N FCFS servers.

Arrivals are Poisson, service demands exponential.  Every arriving job is
handed to a :class:`~lbsim.strategies.Strategy` which picks its server at
the arrival instant; there is no transfer delay and no re-routing.  The
run ends when the run-length controller is satisfied, when any server's
effective length would exceed the break threshold, or (for the
zero-workload case) when the single injected job has left.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from typing import Callable

from .events import EventKind, EventList, SimulationError
from .rng import StreamId, new_stream
from .stats import BatchAccumulator, PrecisionTarget, ci_halfwidth, should_stop, utilization
from .strategies import Strategy, make_strategy

ARRIVAL = EventKind.ARRIVAL
DEPARTURE = EventKind.DEPARTURE
SNAPSHOT = EventKind.SNAPSHOT


class QueueOverflow(Exception):
    """An enqueue would push a server past the break threshold."""

    def __init__(self, server_id: int, time: float):
        super().__init__(f"server {server_id} overflowed at t={time:.6f}")
        self.server_id = server_id
        self.time = time


@dataclass(frozen=True)
class Scenario:
    """One simulated configuration.

    ``workload`` is the offered load lambda / (N * mu); the arrival rate is
    derived from it.  Workloads at or above 1 are rejected unless
    ``allow_unstable`` is set, which exists for exercising the break rule.
    """

    workload: float
    n_servers: int = 5
    service_mean: float = 1.0
    stale_period: float | None = None
    queue_break_threshold: int = 200
    master_seed: int = 0
    allow_unstable: bool = False

    def __post_init__(self):
        if self.n_servers < 1:
            raise ValueError("n_servers must be >= 1")
        if not self.service_mean > 0:
            raise ValueError("service_mean must be positive")
        if not self.workload >= 0:
            raise ValueError("workload must be >= 0")
        if self.workload >= 1 and not self.allow_unstable:
            raise ValueError(f"workload {self.workload} is unstable (must be < 1)")
        if self.stale_period is not None and not self.stale_period > 0:
            raise ValueError("stale_period must be positive")
        if self.queue_break_threshold < 1:
            raise ValueError("queue_break_threshold must be >= 1")

    @property
    def service_rate(self) -> float:
        return 1.0 / self.service_mean

    @property
    def arrival_rate(self) -> float:
        return self.workload * self.n_servers * self.service_rate


@dataclass(slots=True)
class Job:
    id: int
    arrival_time: float
    service_demand: float
    server_id: int = -1
    start_service_time: float = math.nan
    completion_time: float = math.nan

    @property
    def response_time(self) -> float:
        return self.completion_time - self.arrival_time


@dataclass(slots=True)
class ServerState:
    server_id: int
    queue: deque = field(default_factory=deque)
    in_service: Job | None = None
    busy_time_accum: float = 0.0
    completed_count: int = 0

    @property
    def effective_length(self) -> int:
        return len(self.queue) + (self.in_service is not None)


@dataclass
class RunResult:
    mean_response_s: float
    ci_halfwidth_s: float
    per_server_utilization: list[float]
    jobs_completed: int
    jobs_arrived: int
    broken: bool
    broken_time_s: float | None
    sim_time_s: float
    n_batches: int = 0
    mean_in_system: float = math.nan
    jobs_in_system: int = 0

    @property
    def mean_utilization(self) -> float:
        u = self.per_server_utilization
        return sum(u) / len(u) if u else math.nan


def enqueue_job(server: ServerState, job: Job, clock: float, events: EventList,
                threshold: int) -> ServerState:
    """Start ``job`` if the server is idle, else append it to the FCFS queue.

    Raises :class:`QueueOverflow` instead of exceeding ``threshold``.
    """
    if server.effective_length >= threshold:
        raise QueueOverflow(server.server_id, clock)
    job.server_id = server.server_id
    if server.in_service is None:
        job.start_service_time = clock
        server.in_service = job
        events.schedule(clock + job.service_demand, DEPARTURE, server.server_id)
    else:
        server.queue.append(job)
    return server


def run(scenario: Scenario, strategy: Strategy | str,
        precision: PrecisionTarget | None = None, *,
        max_completions: int | None = None,
        on_complete: Callable[[Job], None] | None = None) -> RunResult:
    """Simulate ``scenario`` under ``strategy`` until a stop condition fires.

    ``max_completions`` caps the run at a fixed number of completed jobs
    regardless of precision; ``on_complete`` sees every finished job.
    """
    if isinstance(strategy, str):
        strategy = make_strategy(strategy)
    if precision is None:
        precision = PrecisionTarget()
    if strategy.uses_snapshots and scenario.stale_period is None:
        raise ValueError(f"strategy {strategy.token!r} requires a stale period")

    n = scenario.n_servers
    seed = scenario.master_seed
    interarrival = new_stream(seed, StreamId.INTERARRIVAL)
    service = new_stream(seed, StreamId.SERVICE)
    strategy.attach(n, new_stream(seed, StreamId.TIEBREAK))

    servers = [ServerState(i) for i in range(n)]
    lengths = [0] * n  # effective lengths, mirrored for the dispatcher
    events = EventList()
    acc = BatchAccumulator(precision.batch_size)
    threshold = scenario.queue_break_threshold
    service_mean = scenario.service_mean
    lam = scenario.arrival_rate
    interarrival_mean = 1.0 / lam if lam > 0 else math.inf

    choose = strategy.choose
    reads_true = strategy.reads_true_state
    snapshots = strategy.uses_snapshots
    stale_period = scenario.stale_period

    if lam > 0:
        events.schedule(interarrival.next_exponential(interarrival_mean), ARRIVAL)
    else:
        events.schedule(0.0, ARRIVAL)  # zero load: one probe job, no further arrivals
    if snapshots:
        events.schedule(stale_period, SNAPSHOT)

    pop = events.pop
    schedule = events.schedule
    next_id = 0
    arrived = completed = 0
    in_system = 0
    area = 0.0
    last_t = 0.0
    t = 0.0
    broken = False
    broken_time = None

    while events:
        t, _, kind, sid = pop()
        area += in_system * (t - last_t)
        last_t = t
        if kind == ARRIVAL:
            job = Job(next_id, t, service.next_exponential(service_mean))
            next_id += 1
            sid = choose(lengths) if reads_true else choose()
            try:
                enqueue_job(servers[sid], job, t, events, threshold)
            except QueueOverflow:
                broken, broken_time = True, t
                break
            lengths[sid] += 1
            in_system += 1
            arrived += 1
            if lam > 0:
                schedule(t + interarrival.next_exponential(interarrival_mean), ARRIVAL)
        elif kind == DEPARTURE:
            server = servers[sid]
            job = server.in_service
            if job is None:
                raise SimulationError(f"departure from idle server {sid} at t={t}")
            job.completion_time = t
            server.busy_time_accum += job.service_demand
            server.completed_count += 1
            if server.queue:
                nxt = server.queue.popleft()
                nxt.start_service_time = t
                server.in_service = nxt
                schedule(t + nxt.service_demand, DEPARTURE, sid)
            else:
                server.in_service = None
            lengths[sid] -= 1
            in_system -= 1
            completed += 1
            if on_complete is not None:
                on_complete(job)
            if acc.record(t - job.arrival_time) and should_stop(acc, precision):
                break
            if max_completions is not None and completed >= max_completions:
                break
            if lam == 0 and in_system == 0:
                break
        else:
            strategy.on_snapshot(lengths)
            schedule(t + stale_period, SNAPSHOT)

    sim_time = t
    utils = []
    for s in servers:
        busy = s.busy_time_accum
        if s.in_service is not None:
            busy += sim_time - s.in_service.start_service_time
        utils.append(utilization(busy, sim_time) if sim_time > 0 else 0.0)

    if acc.n_batches >= 2:
        mean, hw = ci_halfwidth(acc.batch_means, precision.confidence)
    else:
        mean, hw = acc.overall_mean(), math.nan

    return RunResult(
        mean_response_s=mean,
        ci_halfwidth_s=hw,
        per_server_utilization=utils,
        jobs_completed=completed,
        jobs_arrived=arrived,
        broken=broken,
        broken_time_s=broken_time,
        sim_time_s=sim_time,
        n_batches=acc.n_batches,
        mean_in_system=area / sim_time if sim_time > 0 else math.nan,
        jobs_in_system=in_system,
    )
