"""
Marchenko-Pastur moments
========================

Closed-form moments against quadrature, the atom for negative c, and the
generating function with its fixed-point equation.
"""

from fractions import Fraction

from laguerre_mp.marchenko_pastur import (
    f_c_minus,
    fixed_point_residual,
    generating_fn,
    moment,
    mp_law,
    quadrature_moment,
)

for c in [Fraction(-1, 2), 0, 1, 3]:
    law = mp_law(c)
    print(f"c={c}: support [{law.x_minus:.4f}, {law.x_plus:.4f}], atom {law.atom}")
    for k in range(0, 5):
        print(f"   k={k}  exact={moment(c, k)}  quadrature={quadrature_moment(c, k):.15g}")

# generating function and the smaller fixed point
c = 1
for z in [0.0, 0.02, 0.05, 0.08]:
    xi = f_c_minus(c, z)
    print(f"z={z}: M_c={generating_fn(c, z):.12f}  (c+1) z f + 1={(c + 1) * z * xi + 1:.12f}  "
          f"residual={fixed_point_residual(c, z, xi):.1e}")
