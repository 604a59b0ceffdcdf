"""
Exact moments of the total mass
===============================

E(Z_n^q) follows from a recursion over n.  Small cases are checked against
a brute-force sum over every sign configuration.
"""

from cascade_lab import (
    a_n,
    brute_force_moment,
    exact_moment,
    limit_even_moment,
    second_moment,
    sigma,
)
from cascade_lab.moments import MomentTable

###############################################################################
# The recursion and the enumeration agree to rounding.

for H in (0.0, 0.25, 0.7):
    fast, slow = exact_moment(2, H, 4, 3), brute_force_moment(2, H, 4, 3)
    print(f"H={H}: E(Z_3^4) = {fast:.12g} (enumeration {slow:.12g})")

###############################################################################
# Below H = 1/2 the variance grows like a_n^2, and the normalized moments
# approach those of N(0, 1).

n = 30
a = a_n(2, 0.25, n)
print(f"a_30 = {a:.3f}; E(Z^2)/a^2 = {exact_moment(2, 0.25, 2, n) / a**2:.5f}, "
      f"E(Z^4)/a^4 = {exact_moment(2, 0.25, 4, n) / a**4:.4f}")
print("limit even moments:", [limit_even_moment(2, 2 * p) for p in range(1, 6)])

###############################################################################
# Above H = 1/2 the second moment converges, and its excess over 1 is sigma^2.

print(f"H=0.7: E(Z_200^2) - 1 = {second_moment(2, 0.7, 200) - 1:.10f}, "
      f"sigma^2 = {sigma(2, 0.7) ** 2:.10f}")

table = MomentTable.build(2, 0.5, qmax=3, nmax=4)
for q, k, v in table.rows():
    print(f"  q={q} n={k}  {v:.6g}")
