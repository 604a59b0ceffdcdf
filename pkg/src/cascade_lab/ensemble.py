"""Monte Carlo ensembles sampled on a coarse b-adic grid.

Trial ``i`` always uses ``SeedSpec(master, i)``, so its row is bit-identical to
the single-path functions and does not depend on how trials are spread over
threads.  Only the values on the level-``grid_level`` grid are kept, which is
all the distributional checks need.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import rng
from .cascade import CascadeParams, check_capacity
from .errors import RegimeError, UndefinedPathError
from .fclt import _remainder_scale, walk_scale
from .rng import SeedSpec

KINDS = ("cascade", "walk", "remainder")


def _block_path(increments: np.ndarray, blocks: int) -> np.ndarray:
    out = np.zeros(blocks + 1)
    out[1:] = np.cumsum(increments.reshape(blocks, -1).sum(axis=1))
    return out


def _trial_row(kind, params, n, m, grid_level, master, trial):
    b = params.b
    key = SeedSpec(master, trial).derived
    keys = rng.level_keys(key, n + m)
    xi = rng.leaf_products(b, n, params.threshold, keys)
    blocks = b**grid_level
    if kind == "cascade":
        sums = xi.reshape(blocks, -1).sum(axis=1, dtype=np.int64)
        row = np.zeros(blocks + 1)
        row[1:] = np.cumsum(sums)
        return row * float(b) ** (-n * params.H)
    if kind == "walk":
        sums = xi.reshape(blocks, -1).sum(axis=1, dtype=np.int64)
        row = np.zeros(blocks + 1)
        row[1:] = np.cumsum(sums)
        return row / walk_scale(b, params.H, n)
    masses = rng.subtree_sums(b, n, m, params.threshold, keys) * float(b) ** (-m * params.H)
    incr = xi * (masses - 1.0) * float(b) ** (-n * params.H)
    return _block_path(incr, blocks) / _remainder_scale(params, n)


def sample_grid(
    kind: str,
    params: CascadeParams,
    n: int,
    trials: int,
    master: int,
    grid_level: int | None = None,
    m: int = 0,
    threads: int | None = None,
) -> np.ndarray:
    """Ensemble of ``trials`` paths, returned as rows of values on the level-``grid_level`` grid.

    ``kind`` is ``"cascade"`` (raw B^H_n), ``"walk"`` (the central-limit walk,
    H <= 1/2, H = -inf allowed) or ``"remainder"`` (the proxy remainder with
    depth ``m``, 1/2 < H <= 1).
    """
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}")
    if grid_level is None:
        grid_level = n
    if not 0 <= grid_level <= n:
        raise ValueError("grid_level must lie in [0, n]")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    check_capacity(params.b, n + m)
    if kind == "cascade" and not math.isfinite(params.H):
        raise UndefinedPathError("no cascade path for H = -inf")
    if kind == "walk" and params.H > 0.5:
        raise RegimeError("walk ensembles need H <= 1/2")
    if kind == "remainder" and not 0.5 < params.H <= 1:
        raise RegimeError("remainder ensembles need 1/2 < H <= 1")
    if kind != "remainder":
        m = 0

    out = np.empty((trials, params.b**grid_level + 1))

    def work(i):
        out[i] = _trial_row(kind, params, n, m, grid_level, master, i)

    workers = rng.thread_count(threads)
    if workers == 1:
        for i in range(trials):
            work(i)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            list(pool.map(work, range(trials)))
    return out


def grid_index(b: int, grid_level: int, t: float) -> int:
    """Column of ``t`` in a level-``grid_level`` grid; ``t`` must be a grid point."""
    x = t * b**grid_level
    k = round(x)
    if abs(x - k) > 1e-9:
        raise ValueError(f"t = {t} is not on the level-{grid_level} b-adic grid")
    return k
