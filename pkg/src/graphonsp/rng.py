"""Counter-based random streams with explicit sub-stream derivation.

Every stochastic routine in the library draws from a Philox generator keyed
by a user seed plus an integer derivation path, so that any cell of a
sampling grid (or any restart of a heuristic) is individually reproducible
and independent of evaluation order.
"""

from __future__ import annotations

import numpy as np

_MASK64 = (1 << 64) - 1


def _splitmix64(x: int) -> int:
    # Steele/Lea/Flood finalizer; standard 64-bit mixer.
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return (x ^ (x >> 31)) & _MASK64


def derive_key(seed: int, *path: int) -> int:
    """Mix a seed and a derivation path into a single 64-bit key."""
    state = _splitmix64(seed & _MASK64)
    for p in path:
        state = _splitmix64(state ^ _splitmix64((p & _MASK64) ^ 0xA5A5A5A5A5A5A5A5))
    return state


def substream(seed: int, *path: int) -> np.random.Generator:
    """Return a Philox generator for the sub-stream named by ``path``.

    Identical ``(seed, path)`` always yields an identical stream; distinct
    paths yield statistically independent streams.
    """
    k0 = derive_key(seed, *path)
    k1 = _splitmix64(k0)
    return np.random.Generator(np.random.Philox(key=np.array([k0, k1], dtype=np.uint64)))
