"""Analytic ground truth: M/M/1, truncated JSQ chain, and round-based dispatch chains."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla


class InstabilityError(ValueError):
    """Arrival rate does not stay below service capacity."""


class OracleUnreliableError(RuntimeError):
    """The truncated chain cannot be trusted (singular solve or boundary mass too high)."""


@dataclass(frozen=True)
class MM1Params:
    arrival_rate: float
    service_rate: float


def mm1_mean_response(p: MM1Params) -> float:
    """Mean sojourn time 1 / (mu - lambda) of a stable M/M/1 queue."""
    if p.arrival_rate < 0 or not p.service_rate > 0:
        raise ValueError("rates must be non-negative / positive")
    if p.arrival_rate >= p.service_rate:
        raise InstabilityError(f"lambda={p.arrival_rate} >= mu={p.service_rate}")
    return 1.0 / (p.service_rate - p.arrival_rate)


@dataclass
class JsqCtmcModel:
    """Join-the-shortest-queue over ``n_servers`` identical exponential servers.

    States are vectors of effective lengths, each capped at ``buffer_cap``;
    an arrival that would exceed the cap is blocked.  Arrivals go to a
    shortest queue, split evenly among ties.
    """

    arrival_rate: float
    service_rate: float
    buffer_cap: int = 60
    n_servers: int = 2
    states: np.ndarray = field(init=False, repr=False)
    generator: sp.csr_matrix = field(init=False, repr=False)

    def __post_init__(self):
        if self.n_servers < 1 or self.buffer_cap < 1:
            raise ValueError("n_servers and buffer_cap must be >= 1")
        if not self.arrival_rate > 0 or not self.service_rate > 0:
            raise ValueError("rates must be positive")
        dims = (self.buffer_cap + 1,) * self.n_servers
        if math.prod(dims) > 2_000_000:
            raise ValueError(f"state space too large: {math.prod(dims)} states")
        self.states = np.array(list(itertools.product(range(self.buffer_cap + 1), repeat=self.n_servers)),
                               dtype=np.int64).reshape(-1, self.n_servers)
        self.generator = self._build(dims)

    def _build(self, dims) -> sp.csr_matrix:
        lam, mu, cap = self.arrival_rate, self.service_rate, self.buffer_cap
        rows, cols, vals = [], [], []
        for idx, q in enumerate(self.states):
            q = q.tolist()
            m = min(q)
            tied = [i for i, x in enumerate(q) if x == m]
            if m < cap:
                share = lam / len(tied)
                for i in tied:
                    q[i] += 1
                    rows.append(idx)
                    cols.append(int(np.ravel_multi_index(q, dims)))
                    vals.append(share)
                    q[i] -= 1
            for i, x in enumerate(q):
                if x > 0:
                    q[i] -= 1
                    rows.append(idx)
                    cols.append(int(np.ravel_multi_index(q, dims)))
                    vals.append(mu)
                    q[i] += 1
        n = len(self.states)
        off = sp.csr_matrix((vals, (rows, cols)), shape=(n, n))
        diag = np.asarray(off.sum(axis=1)).ravel()
        return (off - sp.diags(diag)).tocsr()

    def stationary(self) -> np.ndarray:
        """Solve pi Q = 0, sum(pi) = 1, by replacing one balance equation."""
        a = self.generator.T.tolil()
        a[0, :] = 1.0
        b = np.zeros(a.shape[0])
        b[0] = 1.0
        with np.errstate(all="raise"):
            try:
                pi = spla.spsolve(a.tocsc(), b)
            except (FloatingPointError, RuntimeError) as exc:
                raise OracleUnreliableError(f"linear solve failed: {exc}") from exc
        if not np.all(np.isfinite(pi)):
            raise OracleUnreliableError("linear solve returned non-finite values")
        pi = np.where(pi < 0, 0.0, pi)  # clip round-off
        return pi / pi.sum()

    def boundary_mass(self, pi: np.ndarray) -> float:
        return float(pi[(self.states == self.buffer_cap).any(axis=1)].sum())


def jsq_mean_response(m: JsqCtmcModel, max_boundary_mass: float = 1e-8) -> float:
    """Mean response time from the chain's mean population via Little's law."""
    pi = m.stationary()
    mass = m.boundary_mass(pi)
    if mass >= max_boundary_mass:
        raise OracleUnreliableError(
            f"boundary mass {mass:.3g} >= {max_boundary_mass:g}; raise buffer_cap above {m.buffer_cap}")
    mean_population = float(pi @ m.states.sum(axis=1))
    return mean_population / m.arrival_rate


@dataclass
class CyclicDispatchModel:
    """One tagged server fed by a round-based dispatcher.

    Jobs reach the dispatcher as a Poisson stream of rate ``n_servers *
    workload * service_rate`` and are dealt in rounds of ``n_servers``, each
    server receiving exactly one job per round.  With ``policy="rr"`` the
    tagged server is always first in the round; with ``policy="hsq"`` its
    position is uniform and independent between rounds, which is how the
    history-keeping stale dispatcher behaves once its view has equalized and
    no update arrives.  The chain state is (tagged queue length, jobs dealt
    in this round, tagged already served this round).
    """

    workload: float
    n_servers: int = 5
    service_rate: float = 1.0
    policy: str = "rr"
    buffer_cap: int = 400

    def __post_init__(self):
        if self.policy not in ("rr", "hsq"):
            raise ValueError("policy must be 'rr' or 'hsq'")
        if not 0 < self.workload < 1:
            raise InstabilityError(f"workload {self.workload} outside (0, 1)")

    def _tag_probability(self, dealt: int, used: bool) -> float:
        if self.policy == "rr":
            return 1.0 if dealt == 0 else 0.0
        return 0.0 if used else 1.0 / (self.n_servers - dealt)

    def solve(self) -> tuple[np.ndarray, np.ndarray]:
        """Return (pi, queue length of each state)."""
        n, cap = self.n_servers, self.buffer_cap
        lam = n * self.workload * self.service_rate
        phases = [(j, u) for j in range(n) for u in (False, True)]
        pidx = {p: i for i, p in enumerate(phases)}
        width = len(phases)
        rows, cols, vals = [], [], []
        for q in range(cap + 1):
            for j, u in phases:
                s = q * width + pidx[(j, u)]
                pt = self._tag_probability(j, u)
                for tagged, pr in ((True, pt), (False, 1.0 - pt)):
                    if pr == 0.0 or (tagged and q == cap):
                        continue
                    nxt = (0, False) if j + 1 == n else (j + 1, u or tagged)
                    rows.append(s)
                    cols.append((q + tagged) * width + pidx[nxt])
                    vals.append(lam * pr)
                if q > 0:
                    rows.append(s)
                    cols.append((q - 1) * width + pidx[(j, u)])
                    vals.append(self.service_rate)
        size = (cap + 1) * width
        off = sp.csr_matrix((vals, (rows, cols)), shape=(size, size))
        gen = off - sp.diags(np.asarray(off.sum(axis=1)).ravel())
        a = gen.T.tolil()
        a[0, :] = 1.0
        b = np.zeros(size)
        b[0] = 1.0
        pi = spla.spsolve(a.tocsc(), b)
        if not np.all(np.isfinite(pi)):
            raise OracleUnreliableError("linear solve returned non-finite values")
        pi = np.clip(pi, 0.0, None)
        return pi / pi.sum(), np.repeat(np.arange(cap + 1), width)


def cyclic_mean_response(m: CyclicDispatchModel, max_boundary_mass: float = 1e-8) -> float:
    """Mean response at the tagged server (Little's law on its own arrival rate)."""
    pi, q = m.solve()
    mass = float(pi[q == m.buffer_cap].sum())
    if mass >= max_boundary_mass:
        raise OracleUnreliableError(f"boundary mass {mass:.3g}; raise buffer_cap above {m.buffer_cap}")
    return float(pi @ q) / (m.workload * m.service_rate)
