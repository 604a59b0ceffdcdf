"""Counter-based sign streams.

Every random sign of a cascade is addressed by ``(master, trial, level, index)``
and computed on demand, so any subset of the tree can be regenerated without
replaying the rest of the stream.  The generator is SplitMix64 (period 2^64):

* ``trial_key  = mix(mix(master) + (trial + 1) * GOLDEN)``
* ``level_key  = mix(trial_key + (level + 1) * LEVEL_GAMMA)``
* the k-th 64-bit word of a level stream is ``mix(level_key + (k + 1) * GOLDEN)``;
  its high 32 bits decide the sign of node ``2k`` and its low 32 bits the
  sign of node ``2k + 1``.

A node is ``+1`` when its 32-bit draw is below ``round(plus_prob * 2**32)``.
These rules are frozen: changing any constant changes every golden file.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numba
import numpy as np

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
LEVEL_GAMMA = 0xD1B54A32D192ED69
_M1 = 0xBF58476D1CE4E5B9
_M2 = 0x94D049BB133111EB

_GOLDEN_U = np.uint64(GOLDEN)
_M1_U = np.uint64(_M1)
_M2_U = np.uint64(_M2)
_LOW32 = np.uint64(0xFFFFFFFF)


def mix64(z: int) -> int:
    """SplitMix64 finalizer on Python ints (bijective on 64-bit words)."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * _M1) & MASK64
    z = ((z ^ (z >> 27)) * _M2) & MASK64
    return z ^ (z >> 31)


@dataclass(frozen=True)
class SeedSpec:
    """Master seed plus trial index; ``derived`` is the per-trial stream key."""

    master: int
    trial_index: int = 0

    def __post_init__(self):
        if self.trial_index < 0:
            raise ValueError("trial_index must be >= 0")

    @property
    def derived(self) -> int:
        return mix64(mix64(self.master) + (self.trial_index + 1) * GOLDEN)


def as_seed(seed) -> SeedSpec:
    if isinstance(seed, SeedSpec):
        return seed
    return SeedSpec(int(seed), 0)


def level_key(trial_key: int, level: int) -> int:
    return mix64(trial_key + (level + 1) * LEVEL_GAMMA)


def level_keys(trial_key: int, max_level: int) -> np.ndarray:
    """Keys for levels ``0..max_level`` (entry 0 is never used for signs)."""
    return np.array([level_key(trial_key, j) for j in range(max_level + 1)], dtype=np.uint64)


def sign_threshold(plus_prob: float) -> np.uint64:
    return np.uint64(int(round(plus_prob * 2.0**32)))


def thread_count(default: int | None = None) -> int:
    """Worker count from ``CASCADE_LAB_THREADS`` (falls back to the CPU count)."""
    env = os.environ.get("CASCADE_LAB_THREADS")
    if env:
        return max(1, int(env))
    if default is not None:
        return max(1, default)
    return os.cpu_count() or 1


# ---------------------------------------------------------------------------
# numba kernels

@numba.njit(inline="always")
def _mix(z):
    z = (z ^ (z >> np.uint64(30))) * _M1_U
    z = (z ^ (z >> np.uint64(27))) * _M2_U
    return z ^ (z >> np.uint64(31))


@numba.njit(inline="always")
def _fill_signs(key, start, count, thr, out):
    # out[r] <- sign of node start + r
    stop = start + count
    for k in range(start >> 1, ((stop - 1) >> 1) + 1):
        u = _mix(key + np.uint64(k + 1) * _GOLDEN_U)
        g = 2 * k - start
        hi = np.int8(1) - np.int8(2) * np.int8((u >> np.uint64(32)) >= thr)
        lo = np.int8(1) - np.int8(2) * np.int8((u & _LOW32) >= thr)
        if g >= 0:
            out[g] = hi
        if g + 1 < count:
            out[g + 1] = lo


@numba.njit(nogil=True, cache=True)
def mix_array(z):
    out = np.empty_like(z)
    for i in range(z.size):
        out[i] = _mix(z[i])
    return out


@numba.njit(nogil=True, cache=True)
def level_signs(key, start, count, thr):
    out = np.empty(count, np.int8)
    _fill_signs(key, start, count, thr, out)
    return out


@numba.njit(nogil=True, cache=True)
def leaf_products(b, n, thr, keys):
    """Products of the signs at levels 1..n along the path to each level-n node."""
    total = b**n
    prod = np.empty(total, np.int8)
    sgn = np.empty(total, np.int8)
    prod[0] = 1
    size = 1
    for j in range(1, n + 1):
        _fill_signs(keys[j], 0, size * b, thr, sgn)
        # descending so that prod[q] is still the parent value when read
        for q in range(size - 1, -1, -1):
            pq = prod[q]
            for c in range(b - 1, -1, -1):
                r = q * b + c
                prod[r] = pq * sgn[r]
        size *= b
    return prod


@numba.njit(nogil=True, cache=True)
def subtree_sums(b, n, m, thr, keys):
    """For every level-n node w, the sum over its level-(n+m) descendants v of
    the product of the signs strictly below w on the path to v.

    Equals ``b**(m*H) * Z_m(w)``.  Memory is O(b**m), not O(b**(n+m)).
    """
    cells = b**n
    out = np.empty(cells, np.int64)
    width = b**m
    buf = np.empty(width, np.int8)
    sgn = np.empty(width, np.int8)
    for w in range(cells):
        buf[0] = 1
        size = 1
        base = w
        for j in range(1, m):
            base *= b
            _fill_signs(keys[n + j], base, size * b, thr, sgn)
            for q in range(size - 1, -1, -1):
                pq = buf[q]
                for c in range(b - 1, -1, -1):
                    r = q * b + c
                    buf[r] = pq * sgn[r]
            size *= b
        if m == 0:
            out[w] = 1
            continue
        # last level: accumulate instead of expanding
        base *= b
        _fill_signs(keys[n + m], base, size * b, thr, sgn)
        t = 0
        for q in range(size):
            s = 0
            for c in range(b):
                s += sgn[q * b + c]
            t += buf[q] * s
        out[w] = t
    return out
