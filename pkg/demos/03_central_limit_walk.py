"""
The central limit walk
======================

For H <= 1/2 the normalized walk of leaf sign products looks like Brownian
motion.  This script draws a modest ensemble and compares it with N(0, 1)
and with the covariance min(s, t).
"""

import math

import numpy as np

from cascade_lab import derive_params
from cascade_lab.ensemble import sample_grid
from cascade_lab.stats import empirical_moments, fdd_covariance, ks_statistic, ks_threshold
from cascade_lab.verify import walk_mean

TRIALS = 3000

for H, n in ((0.25, 12), (0.5, 14), (-math.inf, 12)):
    grid = sample_grid("walk", derive_params(2, H), n, TRIALS, master=5, grid_level=2)
    # the walk has mean b^(nH)/scale because E(Z_n) = 1; remove it
    x = grid[:, -1] - walk_mean(2, H, n)
    m = empirical_moments(x, 4)
    print(f"H={H}, n={n}: KS {ks_statistic(x):.4f} (threshold {ks_threshold(TRIALS):.4f}), "
          f"var {m[1] - m[0] ** 2:.3f}, fourth moment {m[3]:.2f}")
    cov = fdd_covariance(grid, [0.25, 0.5, 0.75, 1.0])
    print(np.array2string(cov, precision=3, suppress_small=True))
