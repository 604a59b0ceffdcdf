"""
Roughness of a single path
==========================

Oscillations over cells of width b^-j shrink like b^(-jH), and the graph has
box dimension 2 - H.  Both are read off a regression over generations.
"""

from cascade_lab import box_dimension, derive_params, oscillation_exponent, simulate_path

for H in (0.6, 0.7, 0.8, 0.95, 1.0):
    path = simulate_path(derive_params(2, H), 18, seed=1)
    h = oscillation_exponent(path, 4, 12)
    d = box_dimension(path, 4, 10)
    print(f"H={H}: Hoelder {h.slope:.3f} +- {h.stderr:.3f}, "
          f"box dimension {d.slope:.3f} +- {d.stderr:.3f} (expected {2 - H:.2f})")
