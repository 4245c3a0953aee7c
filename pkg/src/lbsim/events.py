"""Future-event list with a deterministic (time, seq) total order."""

from __future__ import annotations

import enum
import heapq
from typing import NamedTuple


class SimulationError(RuntimeError):
    """Internal logic error; the run cannot continue."""


class EventKind(enum.IntEnum):
    ARRIVAL = 0
    DEPARTURE = 1
    SNAPSHOT = 2


class Event(NamedTuple):
    time: float
    seq: int
    kind: EventKind
    server_id: int = -1


_new_event = tuple.__new__  # bypasses NamedTuple's Python-level __new__


class EventList:
    """Min-heap of events.

    ``seq`` is a global counter assigned when an event is scheduled, so
    equal-time events pop in scheduling order on every platform.
    """

    def __init__(self) -> None:
        self._heap: list[Event] = []
        self._seq = 0
        self.now = 0.0

    def __len__(self) -> int:
        return len(self._heap)

    def __bool__(self) -> bool:
        return bool(self._heap)

    def schedule(self, time: float, kind: EventKind, server_id: int = -1) -> Event:
        if time < self.now:
            raise SimulationError(
                f"cannot schedule {EventKind(kind).name} at t={time} before clock t={self.now}")
        ev = _new_event(Event, (time, self._seq, kind, server_id))
        self._seq += 1
        heapq.heappush(self._heap, ev)
        return ev

    def push(self, event: Event) -> None:
        """Insert a pre-built event, keeping its own ``seq``."""
        if event.time < self.now:
            raise SimulationError(f"cannot schedule event at t={event.time} before clock t={self.now}")
        heapq.heappush(self._heap, event)
        self._seq = max(self._seq, event.seq + 1)

    def peek(self) -> Event | None:
        return self._heap[0] if self._heap else None

    def pop(self) -> Event:
        ev = heapq.heappop(self._heap)
        self.now = ev.time
        return ev
