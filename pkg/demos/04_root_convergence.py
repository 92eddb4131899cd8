"""
Laguerre roots approach Marchenko-Pastur
========================================

With alpha growing like c p, the empirical moments of the roots divided by p
converge to the Marchenko-Pastur moments. The error shrinks roughly like 1/p.
"""

from fractions import Fraction

from laguerre_mp import LaguerreParams
from laguerre_mp.marchenko_pastur import f_c_minus
from laguerre_mp.spectral import convergence_table, f_p, inequality_fp_le_gp

for c in [Fraction(1), Fraction(0), Fraction(-1, 2)]:
    print(f"c = {c}")
    for row in convergence_table(c, [50, 100, 200, 400], 3):
        print(f"   p={row.p:4d} alpha={row.alpha:5d} k={row.k}  "
              f"empirical={row.empirical_moment:.6f}  limit={row.mp_moment:.6f}  error={row.abs_error:.2e}")

# the ratio f_p of conjugate polynomials approaches the fixed point from below
z = 0.05
for p in [10, 50, 200]:
    print(f"p={p}: f_p={f_p(LaguerreParams(p, p), z):.6f}  limit={f_c_minus(1, z):.6f}")

rep = inequality_fp_le_gp(LaguerreParams(100, 0))
print("f_p <= g_p- on 50 points:", rep.ok, f"(largest f - g = {rep.max_excess:.2e})")
