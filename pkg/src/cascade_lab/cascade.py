"""Bilateral canonical cascades: sign trees and the piecewise-linear paths B^H_n.

A path of generation ``n`` is stored as its values on the b-adic grid
``t_k = k * b**-n``.  Over every grid cell the increment is
``xi_k * b**(-n*H)`` where ``xi_k`` is the product of the ``n`` tree signs on
the way down to leaf ``k``.  The full tree is never kept: one running array of
sign products is refined level by level.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import rng
from .errors import (
    CapacityError,
    DomainError,
    InvalidBaseError,
    InvalidExponentError,
    RefinementError,
    UndefinedPathError,
)
from .rng import SeedSpec, as_seed

#: refuse grids with more than this many cells
MAX_CELLS = 2**28


@dataclass(frozen=True)
class CascadeParams:
    b: int
    H: float
    p: float
    plus_prob: float
    minus_prob: float

    @property
    def threshold(self) -> np.uint64:
        return rng.sign_threshold(self.plus_prob)


def derive_params(b: int, H: float) -> CascadeParams:
    """Sign law for base ``b`` and exponent ``H``: ``+1`` w.p. ``(1 + b**(H-1)) / 2``.

    ``H = -inf`` is allowed and gives fair signs.
    """
    if int(b) != b or b < 2:
        raise InvalidBaseError(f"base must be an integer >= 2, got {b!r}")
    H = float(H)
    if math.isnan(H) or H > 1:
        raise InvalidExponentError(f"H must lie in [-inf, 1], got {H!r}")
    b = int(b)
    p = 0.0 if H == -math.inf else float(b) ** (H - 1.0)
    plus = (1.0 + p) / 2.0
    return CascadeParams(b=b, H=H, p=p, plus_prob=plus, minus_prob=1.0 - plus)


def check_capacity(b: int, level: int) -> int:
    if level < 0:
        raise ValueError("level must be >= 0")
    cells = b**level
    if cells > MAX_CELLS:
        raise CapacityError(f"b**n = {b}**{level} exceeds the {MAX_CELLS}-cell guard")
    return cells


@dataclass(frozen=True)
class LevelSigns:
    b: int
    level: int
    signs: np.ndarray

    def __post_init__(self):
        if self.signs.shape != (self.b**self.level,):
            raise ValueError("signs must have exactly b**level entries")
        self.signs.flags.writeable = False


@dataclass(frozen=True)
class PathRealization:
    """Values of one path on the grid ``k * b**-level``, ``k = 0..b**level``."""

    b: int
    H: float
    level: int
    values: np.ndarray
    seed: SeedSpec | None = field(default=None, compare=False)
    # leaf sign products when known; they make the increments exact
    products: np.ndarray | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.values.shape != (self.b**self.level + 1,):
            raise ValueError("values must have b**level + 1 entries")
        if self.products is not None and self.products.shape != (self.b**self.level,):
            raise ValueError("products must have b**level entries")
        self.values.flags.writeable = False
        if self.products is not None:
            self.products.flags.writeable = False

    @property
    def grid(self) -> np.ndarray:
        return np.arange(self.values.size) / float(self.b**self.level)

    def increments(self) -> np.ndarray:
        if self.products is not None:
            return self.products * float(self.b) ** (-self.level * self.H)
        return np.diff(self.values)

    def sign_products(self) -> np.ndarray:
        """Leaf sign products (stored, or recovered from the increments)."""
        if self.products is not None:
            return self.products
        raw = self.increments() * float(self.b) ** (self.level * self.H)
        xi = np.rint(raw)
        if not np.all(np.abs(xi) == 1) or not np.allclose(raw, xi, rtol=0, atol=1e-6):
            raise RefinementError("path increments are not +-b**(-nH); not a cascade path")
        return xi.astype(np.int8)


def path_from_products(b: int, H: float, level: int, xi: np.ndarray, seed=None) -> PathRealization:
    walk = np.empty(xi.size + 1, dtype=np.int64)
    walk[0] = 0
    np.cumsum(xi, dtype=np.int64, out=walk[1:])
    values = walk * float(b) ** (-level * H)
    return PathRealization(b, H, level, values, seed, np.asarray(xi, dtype=np.int8).copy())


def unit_path(params: CascadeParams) -> PathRealization:
    """The generation-0 path ``[0, 1]``."""
    return PathRealization(params.b, params.H, 0, np.array([0.0, 1.0]))


def sample_sign_level(params: CascadeParams, level: int, seed) -> LevelSigns:
    """The ``b**level`` independent signs of one tree generation, in lexicographic order."""
    if level < 1:
        raise ValueError("level must be >= 1")
    cells = check_capacity(params.b, level)
    seed = as_seed(seed)
    key = np.uint64(rng.level_key(seed.derived, level))
    signs = rng.level_signs(key, 0, cells, params.threshold)
    return LevelSigns(params.b, level, signs)


def refine(path: PathRealization, child_signs: LevelSigns) -> PathRealization:
    """One cascade step: split every cell into ``b`` children carrying the new signs."""
    if child_signs.b != path.b:
        raise RefinementError("base mismatch")
    if child_signs.level != path.level + 1:
        raise RefinementError(
            f"child signs are level {child_signs.level}, path is level {path.level}"
        )
    if not math.isfinite(path.H):
        raise UndefinedPathError("H = -inf has no cascade path")
    parent = path.sign_products()
    xi = np.repeat(parent, path.b) * child_signs.signs
    return path_from_products(path.b, path.H, path.level + 1, xi, path.seed)


def simulate_path(params: CascadeParams, n: int, seed) -> PathRealization:
    """B^H_n on its own grid; identical to ``n`` successive :func:`refine` steps."""
    if not math.isfinite(params.H):
        raise UndefinedPathError("b**(-nH) diverges for H = -inf; use fclt.clt_walk")
    if n < 1:
        raise ValueError("n must be >= 1")
    check_capacity(params.b, n)
    seed = as_seed(seed)
    keys = rng.level_keys(seed.derived, n)
    xi = rng.leaf_products(params.b, n, params.threshold, keys)
    return path_from_products(params.b, params.H, n, xi, seed)


def evaluate(path: PathRealization, t):
    """Linear interpolation of the path at ``t`` (scalar or array) in [0, 1]."""
    ts = np.asarray(t, dtype=float)
    if np.any((ts < 0) | (ts > 1)) or np.any(np.isnan(ts)):
        raise DomainError("t must lie in [0, 1]")
    cells = path.values.size - 1
    x = ts * cells
    k = np.minimum(np.floor(x).astype(np.int64), cells - 1)
    frac = x - k
    v = path.values
    out = v[k] + frac * (v[k + 1] - v[k])
    return float(out) if out.ndim == 0 else out


def total_mass(path: PathRealization) -> float:
    """``Z_n = B^H_n(1)``."""
    return float(path.values[-1])


# generator of the base-4 Wiener cartoon, sampled at j/4
CARTOON_GENERATOR = np.array([0.0, 0.5, 0.0, 0.5, 1.0])


def cartoon_wbm(stages: int) -> PathRealization:
    """Non-random base-4 cartoon of Brownian motion after ``stages`` interpolations.

    Every segment is replaced by the image of the generator under the affine
    map sending (0, 0) and (1, 1) to the segment's endpoints, so descending
    segments receive a vertically flipped copy.
    """
    if stages < 1:
        raise ValueError("stages must be >= 1")
    check_capacity(4, stages)
    values = np.array([0.0, 1.0])
    for _ in range(stages):
        y0 = values[:-1]
        d = np.diff(values)
        inner = (y0[:, None] + d[:, None] * CARTOON_GENERATOR[None, :4]).ravel()
        values = np.append(inner, values[-1])
    return PathRealization(4, 0.5, stages, values)
