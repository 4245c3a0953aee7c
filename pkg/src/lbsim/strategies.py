"""Dispatch policies: Random, Round Robin, and three shortest-queue variants.

All shortest-queue variants compare *effective* lengths, i.e. waiting jobs
plus the job in service.  Randomness comes only from the tie-break stream,
with a fixed budget per decision:

    random  1 uniform       usq / ssq  1 uniform
    rr      0 uniforms      hsq        N uniforms
"""

from __future__ import annotations

from typing import Sequence

from .rng import RandomStream

STRATEGY_TOKENS = ("random", "rr", "usq", "ssq", "hsq")
STALE_TOKENS = frozenset({"ssq", "hsq"})


def _pick(u: float, k: int) -> int:
    # guards u*k rounding up to k for u just below 1
    i = int(u * k)
    return i if i < k else k - 1


def choose_random(n_servers: int, tiebreak: RandomStream) -> int:
    """Uniform choice over ``range(n_servers)``."""
    if n_servers < 1:
        raise ValueError("n_servers must be >= 1")
    return _pick(tiebreak.next_uniform(), n_servers)


def choose_shortest(lengths: Sequence[int], tiebreak: RandomStream) -> int:
    """Index of a minimal entry; ties are split uniformly using one draw."""
    if not lengths:
        raise ValueError("lengths must be non-empty")
    m = min(lengths)
    tied = [i for i, q in enumerate(lengths) if q == m]
    u = tiebreak.next_uniform()
    return tied[_pick(u, len(tied))]


class DispatcherView:
    """The dispatcher's believed queue lengths (stale, plus history for HSQ)."""

    __slots__ = ("believed_lengths", "last_snapshot")

    def __init__(self, n_servers: int):
        self.believed_lengths = [0] * n_servers
        self.last_snapshot = [0] * n_servers

    def __repr__(self) -> str:
        return f"DispatcherView({self.believed_lengths})"


def apply_snapshot(view: DispatcherView, true_lengths: Sequence[int]) -> DispatcherView:
    """Overwrite the view with true lengths, discarding any history."""
    if len(true_lengths) != len(view.believed_lengths):
        raise ValueError(
            f"snapshot has {len(true_lengths)} entries, view has {len(view.believed_lengths)}")
    view.believed_lengths = list(true_lengths)
    view.last_snapshot = list(true_lengths)
    return view


def choose_hsq(view: DispatcherView, tiebreak: RandomStream) -> int:
    """Shortest believed queue, least-random-draw tie-break, then increment.

    One uniform is drawn per server, in server order, before the minimum
    is located, so each decision costs exactly N draws.
    """
    lengths = view.believed_lengths
    draws = [tiebreak.next_uniform() for _ in lengths]
    m = min(lengths)
    best = -1
    best_u = 2.0
    for i, q in enumerate(lengths):
        if q == m and draws[i] < best_u:
            best, best_u = i, draws[i]
    lengths[best] += 1
    return best


class Strategy:
    """Base class for a per-run dispatch policy.

    ``attach`` is called by the engine at run start.  Policies with
    ``reads_true_state`` receive the current effective lengths in
    ``choose``; all others are called with no arguments.
    """

    token = ""
    reads_true_state = False
    uses_snapshots = False

    def __init__(self) -> None:
        self.n_servers = 0
        self.tiebreak: RandomStream | None = None

    def attach(self, n_servers: int, tiebreak: RandomStream) -> None:
        self.n_servers = n_servers
        self.tiebreak = tiebreak

    def choose(self, true_lengths: Sequence[int] | None = None) -> int:
        raise NotImplementedError

    def on_snapshot(self, true_lengths: Sequence[int]) -> None:
        pass

    def __repr__(self) -> str:
        return f"{type(self).__name__}()"


class RandomStrategy(Strategy):
    token = "random"

    def choose(self, true_lengths=None):
        return choose_random(self.n_servers, self.tiebreak)


class RoundRobin(Strategy):
    token = "rr"

    def attach(self, n_servers, tiebreak):
        super().attach(n_servers, tiebreak)
        self.rr_next = 0

    def choose(self, true_lengths=None):
        return choose_round_robin(self)


def choose_round_robin(state: RoundRobin) -> int:
    """Return the next server in cyclic order and advance the cursor."""
    i = state.rr_next
    state.rr_next = (i + 1) % state.n_servers
    return i


class UpToDateShortestQueue(Strategy):
    token = "usq"
    reads_true_state = True

    def choose(self, true_lengths=None):
        return choose_shortest(true_lengths, self.tiebreak)


class StaleShortestQueue(Strategy):
    token = "ssq"
    uses_snapshots = True

    def attach(self, n_servers, tiebreak):
        super().attach(n_servers, tiebreak)
        self.view = DispatcherView(n_servers)

    def choose(self, true_lengths=None):
        return choose_shortest(self.view.believed_lengths, self.tiebreak)

    def on_snapshot(self, true_lengths):
        apply_snapshot(self.view, true_lengths)


class HistoryShortestQueue(StaleShortestQueue):
    """Stale shortest queue that counts its own dispatches since the last update."""

    token = "hsq"

    def choose(self, true_lengths=None):
        return choose_hsq(self.view, self.tiebreak)


_BY_TOKEN = {cls.token: cls for cls in
             (RandomStrategy, RoundRobin, UpToDateShortestQueue, StaleShortestQueue, HistoryShortestQueue)}


def make_strategy(token: str) -> Strategy:
    try:
        return _BY_TOKEN[token.lower()]()
    except KeyError:
        raise ValueError(f"unknown strategy {token!r}; expected one of {', '.join(STRATEGY_TOKENS)}") from None
