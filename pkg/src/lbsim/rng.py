"""Seeded random streams, one independent substream per stochastic purpose.

Each stream is a PCG64 generator whose seed is derived by numpy's
``SeedSequence`` hashing of ``(master_seed, purpose)``.  Uniforms are drawn
in blocks for speed; block size does not affect the sequence, since every
double consumes exactly one 64-bit output.
"""

from __future__ import annotations

import enum
import math

import numpy as np

_BLOCK = 4096
_SEED_MASK = (1 << 64) - 1
_log = math.log


class StreamId(enum.IntEnum):
    INTERARRIVAL = 0
    SERVICE = 1
    TIEBREAK = 2


class RandomStream:
    """A single-owner uniform / exponential variate source."""

    __slots__ = ("master_seed", "stream_id", "_bitgen", "_buf", "_i", "_consumed")

    def __init__(self, master_seed: int, stream_id: StreamId):
        self.master_seed = int(master_seed) & _SEED_MASK
        self.stream_id = StreamId(stream_id)
        seq = np.random.SeedSequence([self.master_seed, int(self.stream_id)])
        self._bitgen = np.random.Generator(np.random.PCG64(seq))
        self._buf: list[float] = []
        self._i = 0
        self._consumed = 0

    @property
    def position(self) -> int:
        """Number of uniforms consumed so far."""
        return self._consumed + self._i

    def _refill(self) -> None:
        self._consumed += len(self._buf)
        self._buf = self._bitgen.random(_BLOCK).tolist()
        self._i = 0

    def next_uniform(self) -> float:
        """Return the next draw in [0, 1)."""
        i = self._i
        if i >= len(self._buf):
            self._refill()
            i = 0
        self._i = i + 1
        return self._buf[i]

    def next_exponential(self, mean: float) -> float:
        """Inverse-transform exponential variate; consumes one uniform."""
        if not mean > 0:
            raise ValueError(f"exponential mean must be positive, got {mean!r}")
        i = self._i
        if i >= len(self._buf):
            self._refill()
            i = 0
        self._i = i + 1
        return -mean * _log(1.0 - self._buf[i])

    def __repr__(self) -> str:
        return (f"RandomStream(master_seed={self.master_seed}, "
                f"stream_id={self.stream_id.name}, position={self.position})")


def new_stream(master_seed: int, stream_id: StreamId) -> RandomStream:
    return RandomStream(master_seed, stream_id)


def next_uniform(stream: RandomStream) -> float:
    return stream.next_uniform()


def next_exponential(stream: RandomStream, mean: float) -> float:
    return stream.next_exponential(mean)
