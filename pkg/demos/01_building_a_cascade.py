"""
Building a cascade path by hand
===============================

A path is refined one generation at a time.  Each cell splits into b
children, and every child receives a random sign.
"""

import numpy as np

from cascade_lab import derive_params, refine, sample_sign_level, simulate_path
from cascade_lab.cascade import unit_path

params = derive_params(2, 0.7)
print(f"b=2, H=0.7: E(sign) = {params.p:.4f}, P(+1) = {params.plus_prob:.4f}")

###############################################################################
# Start from the straight segment and refine four times with seed 3.

path = unit_path(params)
for level in range(1, 5):
    path = refine(path, sample_sign_level(params, level, seed=3))
    print(f"level {level}: B(1) = {path.values[-1]: .4f}")

# the one-shot simulator draws the very same signs
direct = simulate_path(params, 4, seed=3)
print("same path as simulate_path:", np.array_equal(direct.values, path.values))

###############################################################################
# Every leaf increment has modulus b^(-nH); only its sign is random.

print("increment moduli:", np.unique(np.round(np.abs(path.increments()), 12)))

###############################################################################
# H = 1 has deterministic signs and gives the identity function.

line = simulate_path(derive_params(2, 1), 6, seed=0)
print("H=1 reproduces t:", np.allclose(line.values, line.grid))
