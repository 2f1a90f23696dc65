"""Counter-based random primitives.

Every random decision in this package is a pure function of a 64-bit seed
and a small tuple of integer keys, via splitmix64-style mixing.  This gives
reproducibility without carrying generator state around, and it is what
makes the per-edge monotone coupling work: the retention threshold of an
edge depends only on (seed, stream, edge id), never on the retention
probability.
"""

from __future__ import annotations

import numpy as np

_MASK = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB

# stream tags keep unrelated uses of the same seed independent
STREAM_SPARSIFY = 0x5350
STREAM_GENERATE = 0x47454E
STREAM_SUBSAMPLE = 0x535542
STREAM_TRIAL = 0x545249


def mix64(x: int) -> int:
    """splitmix64 finalizer; bijective on 64-bit ints."""
    x = (x + _GAMMA) & _MASK
    x ^= x >> 30
    x = (x * _MIX1) & _MASK
    x ^= x >> 27
    x = (x * _MIX2) & _MASK
    x ^= x >> 31
    return x


def mix_keys(seed: int, *keys: int) -> int:
    """Fold a seed and integer keys into one 64-bit hash."""
    h = mix64(seed & _MASK)
    for k in keys:
        h = mix64(h ^ (k & _MASK))
    return h


def uniform(seed: int, *keys: int) -> float:
    """Deterministic uniform in [0, 1) keyed by (seed, keys)."""
    return mix_keys(seed, *keys) / 2.0**64


def edge_key(u: int, v: int) -> int:
    """Canonical id of an undirected edge; independent of the host size."""
    a, b = (u, v) if u < v else (v, u)
    return (a << 32) | b


def uniform_at(base: int, key: int) -> float:
    """Uniform in [0, 1) from a premixed base hash and one key."""
    return mix64(base ^ (key & _MASK)) / 2.0**64


def uniform_array(base: int, keys: np.ndarray) -> np.ndarray:
    """Vectorised ``uniform_at(base, k)`` over a uint64 key array.

    Bit-identical to the scalar path; used where whole edge sets are
    sampled at once.
    """
    x = (np.uint64(base) ^ keys.astype(np.uint64)) + np.uint64(_GAMMA)
    x ^= x >> np.uint64(30)
    x *= np.uint64(_MIX1)
    x ^= x >> np.uint64(27)
    x *= np.uint64(_MIX2)
    x ^= x >> np.uint64(31)
    return x / 2.0**64
