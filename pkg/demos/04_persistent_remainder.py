"""
Persistent regime: the remainder process
========================================

For H > 1/2 the path converges, and the rescaled gap between the limit and
its level-n approximation is again Brownian.  The limit is replaced by a
level-(n+m) proxy, which misses a variance fraction of b^(m(1-2H)).
"""

import numpy as np

from cascade_lab import derive_params, proxy_deficit, remainder_path, tilde_walk
from cascade_lab.ensemble import sample_grid
from cascade_lab.fclt import proxy_depth

b, H, n = 2, 0.7, 6
m = proxy_depth(b, H)
print(f"proxy depth m = {m}, variance deficit {proxy_deficit(b, H, m):.5f}")

###############################################################################
# The remainder and the walk of subtree masses are two views of one quantity.

p = derive_params(b, H)
r = remainder_path(p, n, 8, seed=2)
t = tilde_walk(p, n, 8, seed=2)
print(f"endpoints: remainder {r.endpoint:.12f}, tilde walk {t.endpoint:.12f}")

###############################################################################
# A small ensemble at a shallower proxy depth keeps this quick.

m_small = 10
grid = sample_grid("remainder", p, n, 2000, master=4, grid_level=2, m=m_small)
print(f"m={m_small}: endpoint variance {np.var(grid[:, -1], ddof=1):.3f}, "
      f"expected {1 - proxy_deficit(b, H, m_small):.3f}")
