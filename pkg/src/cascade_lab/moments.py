"""Exact moments of the total mass Z_n = B^H_n(1).

Squaring or raising the one-step identity ``Z_{n+1} = sum_k b^-H eps_k Z_n(k)``
to the power q, with all factors independent, gives

    E(Z_{n+1}^q) = b^(-qH) * sum_{|beta| = q} q!/prod(beta_k!) prod_k E(eps^beta_k) E(Z_n^beta_k)

where ``E(eps^j)`` is ``b^(H-1)`` for odd j and 1 for even j.  The sum over
compositions is the q-th coefficient of the b-th power of the exponential
generating series ``sum_j E(eps^j) E(Z_n^j) x^j / j!``, which is how it is
evaluated here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .cascade import derive_params
from .errors import CapacityError

MAX_ORDER = 16
MAX_ENUMERATED_SIGNS = 20


def second_moment(b: int, H: float, n: int) -> float:
    params = derive_params(b, H)
    if not math.isfinite(params.H):
        raise ValueError("finite H required")
    r = b ** (1 - 2 * H)
    c = (b - 1) / b
    m = 1.0
    for _ in range(n):
        m = r * m + c
    return m


def _eps_moment(p: float, j: int) -> float:
    return p if j % 2 else 1.0


def _step(b: int, H: float, p: float, prev: list[float]) -> list[float]:
    """Moments of orders 0..q of Z_{n+1} from those of Z_n."""
    q = len(prev) - 1
    egf = [_eps_moment(p, j) * prev[j] / math.factorial(j) for j in range(q + 1)]
    power = egf[:]
    for _ in range(b - 1):
        power = [math.fsum(power[i] * egf[k - i] for i in range(k + 1)) for k in range(q + 1)]
    return [b ** (-k * H) * math.factorial(k) * power[k] for k in range(q + 1)]


def moment_sequence(b: int, H: float, q: int, n: int) -> np.ndarray:
    """Array ``out[j, k] = E(Z_k^j)`` for ``j = 0..q``, ``k = 0..n``."""
    params = derive_params(b, H)
    if not math.isfinite(H):
        raise ValueError("finite H required")
    if q > MAX_ORDER:
        raise CapacityError(f"moment order {q} exceeds the cap {MAX_ORDER}")
    if q < 0 or n < 0:
        raise ValueError("q and n must be >= 0")
    if params.p == 1:
        # deterministic signs: Z_n = 1
        return np.ones((q + 1, n + 1))
    out = np.empty((q + 1, n + 1))
    cur = [1.0] * (q + 1)
    out[:, 0] = cur
    for k in range(1, n + 1):
        cur = _step(b, H, params.p, cur)
        cur[0] = 1.0
        if q >= 1:
            cur[1] = 1.0
        out[:, k] = cur
    return out


def exact_moment(b: int, H: float, q: int, n: int) -> float:
    """E(Z_n^q) for 1 <= q <= 16."""
    if q < 1:
        raise ValueError("q must be >= 1")
    return float(moment_sequence(b, H, q, n)[q, n])


def covariance(b: int, H: float, n: int, m: int) -> float:
    """E(Z_n Z_m) = E(Z_min(n,m)^2) by the martingale property."""
    if n < 0 or m < 0:
        raise ValueError("n and m must be >= 0")
    return second_moment(b, H, min(n, m))


def _compositions(total: int, parts: int, below: int):
    """Tuples of ``parts`` nonnegative ints summing to ``total``, each < ``below``."""
    if parts == 1:
        if total < below:
            yield (total,)
        return
    for first in range(min(total, below - 1) + 1):
        for rest in _compositions(total - first, parts - 1, below):
            yield (first,) + rest


@lru_cache(maxsize=None)
def _limit_even(b: int, p: int) -> Fraction:
    if p <= 1:
        return Fraction(1)
    acc = Fraction(0)
    for alpha in _compositions(p, b, p):
        w = math.factorial(2 * p)
        for a in alpha:
            w //= math.factorial(2 * a)
        term = Fraction(w)
        for a in alpha:
            term *= _limit_even(b, a)
        acc += term
    return acc / (b**p - b)


def limit_even_moment(b: int, order: int) -> float:
    """Limit M_{2p} of E((Z_n/a_n)^{2p}) from the even-moment recursion (exact rationals)."""
    if int(b) != b or b < 2:
        raise ValueError("b must be an integer >= 2")
    if order < 0 or order % 2:
        raise ValueError("order must be an even integer >= 0")
    return float(_limit_even(int(b), order // 2))


def brute_force_moment(b: int, H: float, q: int, n: int) -> float:
    """E(Z_n^q) by summing over every sign assignment of the first n tree levels."""
    params = derive_params(b, H)
    if not math.isfinite(H):
        raise ValueError("finite H required")
    count = (b ** (n + 1) - b) // (b - 1)
    if count > MAX_ENUMERATED_SIGNS:
        raise CapacityError(f"{count} signs exceed the enumeration cap of {MAX_ENUMERATED_SIGNS}")
    if n == 0:
        return 1.0
    configs = np.arange(2**count, dtype=np.int64)
    # bit set -> sign -1
    bits = ((configs[:, None] >> np.arange(count)) & 1).astype(np.int8)
    signs = 1 - 2 * bits
    prod = np.ones((configs.size, 1), dtype=np.int64)
    offset = 0
    for level in range(1, n + 1):
        width = b**level
        prod = np.repeat(prod, b, axis=1) * signs[:, offset:offset + width]
        offset += width
    z = prod.sum(axis=1) * float(b) ** (-n * H)
    minus = bits.sum(axis=1)
    plus = count - minus
    weight = np.power(np.longdouble(params.plus_prob), plus) * np.power(
        np.longdouble(params.minus_prob), minus
    )
    terms = weight * np.power(z.astype(np.longdouble), q)
    return math.fsum(terms.astype(float))


@dataclass
class MomentTable:
    b: int
    H: float
    entries: dict[tuple[int, int], float] = field(default_factory=dict)
    limits: dict[int, float] = field(default_factory=dict)

    @classmethod
    def build(cls, b: int, H: float, qmax: int, nmax: int, limit_orders=()) -> "MomentTable":
        seq = moment_sequence(b, H, qmax, nmax)
        entries = {(q, n): float(seq[q, n]) for q in range(1, qmax + 1) for n in range(nmax + 1)}
        limits = {o: limit_even_moment(b, o) for o in limit_orders}
        return cls(b, H, entries, limits)

    def rows(self):
        for (q, n), v in sorted(self.entries.items()):
            yield q, n, v
