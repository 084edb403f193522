"""Deterministic random-number streams shared by the compiled and pure kernels.

Every stochastic routine in this package draws from a xoshiro256++ generator
whose 256-bit state is derived from a 64-bit master seed plus an integer
stream id via splitmix64 hashing.  The same generator is implemented inline
in the compiled kernels, so a given (master_seed, stream_id) produces the
identical sequence of doubles on both engines.
"""

from __future__ import annotations

from dataclasses import dataclass

_MASK = 0xFFFFFFFFFFFFFFFF
_SPLITMIX_GAMMA = 0x9E3779B97F4A7C15


def _splitmix64(state: int) -> tuple[int, int]:
    """One splitmix64 step: returns (new_state, output word)."""
    state = (state + _SPLITMIX_GAMMA) & _MASK
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return state, z ^ (z >> 31)


def _mix(h: int, value: int) -> int:
    """Fold one 64-bit value into a running hash (splitmix64 avalanche)."""
    _, out = _splitmix64((h ^ (value & _MASK)) & _MASK)
    return out


class Xoshiro256:
    """xoshiro256++ generator (Blackman & Vigna), pure-Python edition.

    All distribution transforms used in this package reduce to
    ``next_double``, which returns a uniform double in [0, 1).
    """

    __slots__ = ("s0", "s1", "s2", "s3")

    def __init__(self, s0: int, s1: int, s2: int, s3: int):
        if not (s0 | s1 | s2 | s3):
            s0 = 1  # the all-zero state is a fixed point
        self.s0, self.s1, self.s2, self.s3 = s0, s1, s2, s3

    def next_u64(self) -> int:
        s0, s1, s2, s3 = self.s0, self.s1, self.s2, self.s3
        tmp = (s0 + s3) & _MASK
        result = (((tmp << 23) | (tmp >> 41)) + s0) & _MASK
        t = (s1 << 17) & _MASK
        s2 ^= s0
        s3 ^= s1
        s1 ^= s2
        s0 ^= s3
        s2 ^= t
        s3 = ((s3 << 45) | (s3 >> 19)) & _MASK
        self.s0, self.s1, self.s2, self.s3 = s0, s1, s2, s3
        return result

    def next_double(self) -> float:
        # 53 high bits scaled into [0, 1); matches the compiled kernels bit
        # for bit.
        return (self.next_u64() >> 11) * 1.1102230246251565e-16  # 2**-53

    def state(self) -> tuple[int, int, int, int]:
        return (self.s0, self.s1, self.s2, self.s3)


@dataclass(frozen=True)
class RngStream:
    """Addressable random stream: (master_seed, stream_id) pins the sequence.

    Streams are cheap value objects; call :meth:`generator` to obtain a fresh
    stateful generator positioned at the start of the stream, or
    :meth:`derive` to get a statistically independent child stream.
    """

    master_seed: int
    stream_id: int = 0

    def derive(self, *ids: int) -> "RngStream":
        """Child stream addressed by folding ``ids`` into the stream id."""
        h = self.stream_id & _MASK
        for value in ids:
            h = _mix(h, value)
        return RngStream(self.master_seed, h)

    def state(self) -> tuple[int, int, int, int]:
        """Initial 256-bit xoshiro state for this stream."""
        h = _mix(self.master_seed & _MASK, self.stream_id & _MASK)
        words = []
        for _ in range(4):
            h, word = _splitmix64(h)
            words.append(word)
        return tuple(words)

    def generator(self) -> Xoshiro256:
        return Xoshiro256(*self.state())
