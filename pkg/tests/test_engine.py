import math
from collections import Counter, defaultdict

import pytest

import lbsim.engine as engine
from lbsim.engine import Job, QueueOverflow, Scenario, ServerState, enqueue_job, run
from lbsim.events import EventKind, EventList
from lbsim.stats import PrecisionTarget
from lbsim.strategies import HistoryShortestQueue, StaleShortestQueue, UpToDateShortestQueue

QUICK = PrecisionTarget(relative_halfwidth=0.05, batch_size=200, min_batches=10)


def collect(scenario, strategy, n):
    jobs = []
    res = run(scenario, strategy, QUICK, max_completions=n, on_complete=jobs.append)
    return res, jobs


# -- scenario -----------------------------------------------------------------

def test_arrival_rate_is_derived():
    s = Scenario(0.8, n_servers=5, service_mean=2.0)
    assert s.arrival_rate == 0.8 * 5 * 0.5


@pytest.mark.parametrize("kwargs", [
    dict(workload=1.0), dict(workload=-0.1), dict(workload=0.5, n_servers=0),
    dict(workload=0.5, service_mean=0.0), dict(workload=0.5, stale_period=0.0),
    dict(workload=0.5, queue_break_threshold=0),
])
def test_invalid_scenarios(kwargs):
    with pytest.raises(ValueError):
        Scenario(**kwargs)


def test_unstable_workload_needs_opt_in():
    assert Scenario(1.2, allow_unstable=True).arrival_rate == pytest.approx(6.0)


def test_stale_strategy_requires_period():
    with pytest.raises(ValueError, match="stale period"):
        run(Scenario(0.5), "ssq")


# -- enqueue_job -----------------------------------------------------------------

def test_enqueue_idle_server_starts_service():
    ev = EventList()
    srv = ServerState(2)
    job = Job(0, 10.0, 1.5)
    enqueue_job(srv, job, 10.0, ev, 200)
    assert srv.in_service is job and job.start_service_time == 10.0 and job.server_id == 2
    dep = ev.pop()
    assert dep.kind == EventKind.DEPARTURE and dep.time == 11.5 and dep.server_id == 2


def test_enqueue_busy_server_queues():
    ev = EventList()
    srv = ServerState(0)
    for i in range(3):
        enqueue_job(srv, Job(i, 0.0, 1.0), 0.0, ev, 200)
    assert len(srv.queue) == 2 and len(ev) == 1
    enqueue_job(srv, Job(3, 0.0, 1.0), 0.0, ev, 200)
    assert len(srv.queue) == 3 and len(ev) == 1
    assert srv.effective_length == 4


def test_enqueue_overflow_at_threshold():
    ev = EventList()
    srv = ServerState(0)
    for i in range(200):
        enqueue_job(srv, Job(i, 0.0, 1.0), 0.0, ev, 200)
    assert srv.effective_length == 200
    with pytest.raises(QueueOverflow):
        enqueue_job(srv, Job(200, 0.0, 1.0), 0.0, ev, 200)


# -- whole runs --------------------------------------------------------------------

def test_zero_workload_single_job():
    res, jobs = collect(Scenario(0.0, master_seed=3), "random", 10)
    assert len(jobs) == 1 and res.jobs_arrived == 1 and res.jobs_completed == 1
    (job,) = jobs
    assert res.mean_response_s == job.service_demand == job.response_time
    assert math.isnan(res.ci_halfwidth_s)
    assert res.sim_time_s == job.completion_time


def test_zero_workload_with_snapshots_terminates():
    res = run(Scenario(0.0, stale_period=0.5, master_seed=3), "hsq")
    assert res.jobs_completed == 1


def test_random_at_half_load_matches_mm1():
    res = run(Scenario(0.5, master_seed=2024), "random")
    assert not res.broken
    assert abs(res.mean_response_s - 2.0) <= res.ci_halfwidth_s
    assert res.ci_halfwidth_s <= 0.01 * res.mean_response_s


def test_tiny_break_threshold_breaks():
    res = run(Scenario(0.95, queue_break_threshold=5, master_seed=1), "random")
    assert res.broken and res.broken_time_s is not None
    assert res.broken_time_s == res.sim_time_s
    assert res.jobs_arrived == res.jobs_completed + res.jobs_in_system


@pytest.mark.parametrize("token", ["random", "rr", "usq", "ssq", "hsq"])
def test_job_invariants_conservation_and_fcfs(token):
    res, jobs = collect(Scenario(0.8, stale_period=3.0, master_seed=9), token, 20_000)
    assert res.jobs_completed == len(jobs) == 20_000
    assert res.jobs_arrived == res.jobs_completed + res.jobs_in_system
    per_server = defaultdict(list)
    for j in jobs:
        assert j.start_service_time >= j.arrival_time
        assert j.completion_time == j.start_service_time + j.service_demand
        # (a + d) - a may round one ulp below d
        assert j.response_time >= j.service_demand - 4 * math.ulp(j.completion_time)
        per_server[j.server_id].append(j)
    for js in per_server.values():
        # completion order per server is service order; ids are dispatch order
        assert [j.id for j in js] == sorted(j.id for j in js)
        starts = [j.start_service_time for j in js]
        assert starts == sorted(starts)


def test_determinism():
    a, ja = collect(Scenario(0.7, stale_period=2.0, master_seed=77), "hsq", 5000)
    b, jb = collect(Scenario(0.7, stale_period=2.0, master_seed=77), "hsq", 5000)
    assert a == b
    assert ja == jb


def test_different_seeds_differ():
    a, _ = collect(Scenario(0.7, master_seed=1), "random", 5000)
    b, _ = collect(Scenario(0.7, master_seed=2), "random", 5000)
    assert a.mean_response_s != b.mean_response_s


def test_clock_is_monotone(monkeypatch):
    popped = []

    class Recording(EventList):
        def pop(self):
            ev = super().pop()
            popped.append(ev.time)
            return ev

    monkeypatch.setattr(engine, "EventList", Recording)
    run(Scenario(0.9, stale_period=1.0, master_seed=4), "ssq", QUICK, max_completions=5000)
    assert len(popped) > 10_000
    assert all(a <= b for a, b in zip(popped, popped[1:]))


def test_arrival_and_service_sequences_shared_across_strategies():
    traces = {}
    for token in ("random", "rr", "usq", "hsq"):
        _, jobs = collect(Scenario(0.6, stale_period=2.0, master_seed=31), token, 3000)
        traces[token] = {j.id: (j.arrival_time, j.service_demand) for j in jobs}
    common = set.intersection(*(set(t) for t in traces.values()))
    assert len(common) > 2500
    ref = traces["random"]
    for t in traces.values():
        assert all(t[i] == ref[i] for i in common)


@pytest.mark.parametrize("token,budget", [("random", 1), ("rr", 0), ("usq", 1), ("ssq", 1), ("hsq", 5)])
def test_tiebreak_budget_in_a_run(token, budget):
    from lbsim.strategies import make_strategy
    strat = make_strategy(token)
    res = run(Scenario(0.6, stale_period=2.0, master_seed=8), strat, QUICK, max_completions=4000)
    assert strat.tiebreak.position == res.jobs_arrived * budget


class CheckedUSQ(UpToDateShortestQueue):
    violations = 0
    decisions = 0

    def choose(self, true_lengths=None):
        i = super().choose(true_lengths)
        CheckedUSQ.decisions += 1
        CheckedUSQ.violations += any(true_lengths[i] > q for q in true_lengths)
        return i


def test_usq_picks_a_truly_shortest_queue():
    CheckedUSQ.violations = CheckedUSQ.decisions = 0
    run(Scenario(0.9, master_seed=12), CheckedUSQ(), QUICK, max_completions=10_000)
    assert CheckedUSQ.decisions >= 10_000 and CheckedUSQ.violations == 0


class CheckedSSQ(StaleShortestQueue):
    def choose(self, true_lengths=None):
        believed = list(self.view.believed_lengths)
        i = super().choose(true_lengths)
        assert believed[i] == min(believed)
        assert self.view.believed_lengths == self.view.last_snapshot
        return i


def test_ssq_picks_shortest_believed_queue():
    run(Scenario(0.8, stale_period=4.0, master_seed=13), CheckedSSQ(), QUICK, max_completions=10_000)


class CheckedHSQ(HistoryShortestQueue):
    def attach(self, n_servers, tiebreak):
        super().attach(n_servers, tiebreak)
        self.since = Counter()
        self.snapshots = 0

    def on_snapshot(self, true_lengths):
        super().on_snapshot(true_lengths)
        self.since.clear()
        self.snapshots += 1

    def choose(self, true_lengths=None):
        believed = list(self.view.believed_lengths)
        i = super().choose(true_lengths)
        assert believed[i] == min(believed)
        self.since[i] += 1
        diff = [b - a for a, b in zip(self.view.last_snapshot, self.view.believed_lengths)]
        assert diff == [self.since[k] for k in range(self.n_servers)]
        return i


def test_hsq_history_accounting_during_a_run():
    strat = CheckedHSQ()
    run(Scenario(0.8, stale_period=4.0, master_seed=14), strat, QUICK, max_completions=10_000)
    assert strat.snapshots > 100


def test_first_snapshot_fires_at_stale_period():
    class FirstSnap(StaleShortestQueue):
        def on_snapshot(self, true_lengths):
            super().on_snapshot(true_lengths)
            self.count = getattr(self, "count", 0) + 1

    s = FirstSnap()
    res = run(Scenario(0.5, stale_period=7.0, master_seed=2), s, QUICK, max_completions=3000)
    assert s.count == int(res.sim_time_s // 7.0)


def test_littles_law():
    sc = Scenario(0.5, master_seed=21)
    res = run(sc, "random")
    lw = sc.arrival_rate * res.mean_response_s
    assert abs(res.mean_in_system - lw) / lw < 0.02


@pytest.mark.parametrize("token", ["random", "rr", "usq"])
def test_symmetric_strategies_balance_utilization(token):
    res = run(Scenario(0.5, master_seed=22), token)
    assert all(0.48 <= u <= 0.52 for u in res.per_server_utilization)
    assert res.mean_utilization == pytest.approx(0.5, abs=0.01)
