"""splitmix64, vectorized.

Output ``i`` (0-based) of the stream seeded with ``s`` is ``mix(s + (i+1) * GAMMA)``
modulo 2**64, so any slice of the stream can be computed directly.
"""

from __future__ import annotations

import numpy as np

GAMMA = 0x9E3779B97F4A7C15
MASK64 = (1 << 64) - 1


def _mix_scalar(z: int) -> int:
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def splitmix64(seed: int, start: int, count: int) -> np.ndarray:
    """Outputs ``start .. start+count-1`` of the stream as uint64."""
    seed &= MASK64
    with np.errstate(over="ignore"):
        i = np.arange(start + 1, start + count + 1, dtype=np.uint64)
        z = np.uint64(seed) + i * np.uint64(GAMMA)
        z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
        return z ^ (z >> np.uint64(31))


class SplitMix64:
    """Sequential view of the same stream, for code that draws one value at a time."""

    def __init__(self, seed: int, position: int = 0):
        self.seed = seed & MASK64
        self.position = position

    def next(self) -> int:
        self.position += 1
        return _mix_scalar((self.seed + self.position * GAMMA) & MASK64)

    def below(self, bound: int) -> int:
        return self.next() % bound
