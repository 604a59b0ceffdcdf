"""Data behind the six figures: the Wiener cartoon and B^H_k for k = 8, 12, 18, 27.

Paths deeper than ``max_level`` are reported on the level-``max_level`` grid
(their exact values at those b-adic points); this keeps k = 27 at a few MB.
All depths of one figure share the seed, so they are successive refinements of
one cascade.
"""

from __future__ import annotations

import math

import numpy as np

from . import rng
from .cascade import cartoon_wbm, check_capacity, derive_params
from .normalization import sigma
from .rng import as_seed

DEPTHS = (8, 12, 18, 27)
CARTOON_STAGES = (2, 3, 4)

# name -> (b, H, normalization)
PRESETS = {
    "fig1": None,
    "fig2": (2, 0.95, "raw"),
    "fig3": (2, 0.7, "raw"),
    "fig4": (2, 0.5, "critical"),
    "fig5": (2, 0.25, "antipersistent"),
    "fig6": (2, -2.0, "antipersistent"),
}


def walk_on_grid(b: int, H: float, k: int, grid_level: int, seed) -> np.ndarray:
    """Partial sums S of the level-k walk at the level-``grid_level`` points."""
    params = derive_params(b, H)
    check_capacity(b, k)
    g = min(k, grid_level)
    keys = rng.level_keys(as_seed(seed).derived, k)
    xi = rng.leaf_products(b, g, params.threshold, keys).astype(np.int64)
    if k > g:
        xi = xi * rng.subtree_sums(b, g, k - g, params.threshold, keys)
    out = np.zeros(b**g + 1, dtype=np.int64)
    np.cumsum(xi, out=out[1:])
    return out


def scale_factor(b: int, H: float, k: int, kind: str) -> float:
    if kind == "raw":
        return float(b) ** (-k * H)
    if kind == "critical":
        return b ** (-k / 2) / (sigma(b, H) * math.sqrt(k))
    return 1.0 / (sigma(b, H) * b ** (k / 2))


def figure_series(name: str, seed=7, max_level: int = 14):
    """List of ``(label, grid, values)`` for the named preset."""
    if name not in PRESETS:
        raise ValueError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}")
    if name == "fig1":
        out = []
        for s in CARTOON_STAGES:
            path = cartoon_wbm(s)
            out.append((f"stage{s}", path.grid, path.values))
        return out
    b, H, kind = PRESETS[name]
    out = []
    for k in DEPTHS:
        S = walk_on_grid(b, H, k, max_level, seed)
        grid = np.linspace(0.0, 1.0, S.size)
        out.append((f"k{k}", grid, S * scale_factor(b, H, k, kind)))
    return out
