"""Random-walk form of the cascade and its central-limit processes.

``xi_k`` is the product of the n tree signs above leaf k and ``S_r`` the partial
sums of ``xi``.  For H <= 1/2 the walk ``S`` scaled by ``sigma_H sqrt(b^n)``
(``sigma_{1/2} sqrt(n b^n)`` at H = 1/2) is the central-limit process.  For
1/2 < H < 1 the objects of interest are the remainder ``B^H - B^H_n`` and the
walk of the weights ``(B^H(w)(1) - 1) xi_k``; the unobservable limit ``B^H`` is
replaced by the proxy ``B^H_{n+m}``, whose variance deficit is ``b^{m(1-2H)}``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import rng
from .cascade import CascadeParams, check_capacity, path_from_products, simulate_path
from .errors import RegimeError
from .normalization import normalizer, sigma
from .rng import SeedSpec, as_seed


@dataclass(frozen=True)
class WalkRealization:
    b: int
    H: float
    n: int
    level: int
    xi: np.ndarray
    values: np.ndarray
    scale: float
    seed: SeedSpec | None = field(default=None, compare=False)

    @property
    def grid(self) -> np.ndarray:
        return np.linspace(0.0, 1.0, self.values.size)

    @property
    def endpoint(self) -> float:
        return float(self.values[-1])


def xi_sequence(params: CascadeParams, n: int, seed) -> np.ndarray:
    """``xi_k`` for ``k < b**n``; drawn from the same sign stream as :func:`simulate_path`."""
    if n < 1:
        raise ValueError("n must be >= 1")
    check_capacity(params.b, n)
    seed = as_seed(seed)
    keys = rng.level_keys(seed.derived, n)
    return rng.leaf_products(params.b, n, params.threshold, keys)


def walk_scale(b: int, H: float, n: int) -> float:
    """Divisor of S in the central-limit walk."""
    if H == 0.5:
        return sigma(b, H) * math.sqrt(n * b**n)
    return sigma(b, H) * math.sqrt(b**n)


def clt_walk(params: CascadeParams, n: int, seed) -> WalkRealization:
    """X_n^H on the level-n grid (linear in between)."""
    if params.H > 0.5:
        raise RegimeError("clt_walk needs H <= 1/2; use remainder_path for H > 1/2")
    seed = as_seed(seed)
    xi = xi_sequence(params, n, seed)
    scale = walk_scale(params.b, params.H, n)
    values = np.zeros(xi.size + 1)
    values[1:] = np.cumsum(xi, dtype=np.int64)
    values /= scale
    return WalkRealization(params.b, params.H, n, n, xi, values, scale, seed)


def _persistent_only(params: CascadeParams) -> None:
    if not 0.5 < params.H <= 1:
        raise RegimeError(f"defined for 1/2 < H <= 1, got H = {params.H}")


def _remainder_scale(params: CascadeParams, n: int) -> float:
    # sigma_1 = 0: at H = 1 the remainder is identically zero, keep it unscaled
    s = normalizer(params.b, params.H, n)
    return s if s > 0 else 1.0


def remainder_path(params: CascadeParams, n: int, m: int, seed) -> WalkRealization:
    """(B^H_{n+m} - B^H_n) / (sigma_H b^{n(1/2-H)}) on the level-(n+m) grid."""
    _persistent_only(params)
    if m < 0:
        raise ValueError("m must be >= 0")
    seed = as_seed(seed)
    b = params.b
    xi = xi_sequence(params, n, seed)
    coarse = path_from_products(b, params.H, n, xi)
    scale = _remainder_scale(params, n)
    if m == 0:
        return WalkRealization(b, params.H, n, n, xi, np.zeros(b**n + 1), scale, seed)
    fine = simulate_path(params, n + m, seed)
    # B_n is linear on each level-n cell
    offsets = np.arange(b**m) / float(b**m)
    lin = (coarse.values[:-1, None] + np.diff(coarse.values)[:, None] * offsets[None, :]).ravel()
    lin = np.append(lin, coarse.values[-1])
    values = (fine.values - lin) / scale
    return WalkRealization(b, params.H, n, n + m, xi, values, scale, seed)


def subtree_masses(params: CascadeParams, n: int, m: int, seed) -> np.ndarray:
    """Z_m(w) for every level-n word w, from the shared sign stream."""
    check_capacity(params.b, n + m)
    seed = as_seed(seed)
    keys = rng.level_keys(seed.derived, n + m)
    sums = rng.subtree_sums(params.b, n, m, params.threshold, keys)
    return sums * float(params.b) ** (-m * params.H)


def tilde_walk(params: CascadeParams, n: int, m: int, seed) -> WalkRealization:
    """Walk of ``(Z_m(w_k) - 1) xi_k`` scaled by ``sigma_H sqrt(b^n)``."""
    _persistent_only(params)
    seed = as_seed(seed)
    xi = xi_sequence(params, n, seed)
    weights = (subtree_masses(params, n, m, seed) - 1.0) * xi
    s = sigma(params.b, params.H)
    scale = s * math.sqrt(params.b**n) if s > 0 else 1.0
    values = np.empty(xi.size + 1)
    values[0] = 0.0
    np.cumsum(weights, out=values[1:])
    values /= scale
    return WalkRealization(params.b, params.H, n, n, weights, values, scale, seed)


def proxy_deficit(b: int, H: float, m: int) -> float:
    """Variance missing from the proxy remainder: ``b^{m(1-2H)}``."""
    return b ** (m * (1 - 2 * H))


def proxy_depth(b: int, H: float, factor: float = 8.0) -> int:
    """Smallest m with ``b^{m(H-1/2)} >= factor``."""
    if not 0.5 < H < 1:
        raise RegimeError("proxy depth is defined for 1/2 < H < 1")
    return math.ceil(math.log(factor) / ((H - 0.5) * math.log(b)) - 1e-9)
