"""Normalizing constants sigma_H, a_n^H and the regime-dependent divisor."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .cascade import derive_params
from .errors import RegimeError

# below this |1 - 2H| the a_n formula is replaced by its H -> 1/2 limit
NEAR_CRITICAL = 1e-6


class Regime(str, enum.Enum):
    ANTIPERSISTENT = "antipersistent"
    CRITICAL = "critical"
    PERSISTENT = "persistent"
    DEGENERATE_LIMIT = "degenerate-limit"


def regime(H: float) -> Regime:
    if H == -math.inf:
        return Regime.DEGENERATE_LIMIT
    if H < 0.5:
        return Regime.ANTIPERSISTENT
    if H == 0.5:
        return Regime.CRITICAL
    return Regime.PERSISTENT


def sigma(b: int, H: float) -> float:
    """sigma_H.

    For H > 1/2 this is sqrt(E(B^H(1)^2) - 1) written in closed form,
    ``(b**(1-2H) - 1/b) / (1 - b**(1-2H))``; it vanishes at H = 1.
    """
    derive_params(b, H)
    if H == -math.inf:
        return 1.0
    if H < 0.5:
        return math.sqrt((b - 1) / (b ** (2 - 2 * H) - b) + 1)
    if H == 0.5:
        return math.sqrt((b - 1) / b)
    r = b ** (1 - 2 * H)
    return math.sqrt(max(r - 1 / b, 0.0) / (1 - r))


@dataclass(frozen=True)
class NormalizationSchedule:
    b: int
    H: float
    regime: Regime
    sigma: float
    degenerate: bool

    def normalizer(self, n: int) -> float:
        return normalizer(self.b, self.H, n)


def schedule(b: int, H: float) -> NormalizationSchedule:
    s = sigma(b, H)
    return NormalizationSchedule(b, float(H), regime(H), s, degenerate=(s == 0.0))


def a_n(b: int, H: float, n: int) -> float:
    """a_n^H = sqrt(E(Z_n^2) - 1) for H <= 1/2."""
    derive_params(b, H)
    if not math.isfinite(H):
        raise RegimeError("a_n is defined for finite H only")
    if H > 0.5:
        raise RegimeError(f"a_n is defined for H <= 1/2, got {H}")
    if n < 1:
        raise ValueError("n must be >= 1")
    x = (1 - 2 * H) * math.log(b)
    if abs(1 - 2 * H) < NEAR_CRITICAL:
        return math.sqrt((b - 1) / b * n)
    coef = (b - 1) / b + math.expm1(x)
    return math.sqrt(coef * math.expm1(n * x) / math.expm1(x))


def normalizer(b: int, H: float, n: int) -> float:
    """Divisor that makes B^H_n (H <= 1/2) or B^H - B^H_n (H > 1/2) Wiener-like.

    H = -inf refers to the walk sum S (no b**(-nH) factor): ``b**(n/2)``.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    s = sigma(b, H)
    if H == -math.inf:
        return b ** (n / 2)
    if H == 0.5:
        return s * math.sqrt(n)
    return s * b ** (n * (0.5 - H))
