"""
Exact power sums of Laguerre roots
==================================

The roots of a monic Laguerre polynomial are irrational, but their power sums
are rational functions of p and alpha. This script computes them three ways
and then looks at the leading homogeneous part of the symbolic power sum.
"""

from fractions import Fraction

from laguerre_mp import LaguerreParams, monic_coeffs, newton_power_sums, roots
from laguerre_mp.power_sums import a_value, certify_theorem2, symbolic_power_sum
from laguerre_mp.spectral import power_sum

prm = LaguerreParams(6, Fraction(7, 3))
print("polynomial:", monic_coeffs(prm))

# Newton identities on the exact coefficients
table = newton_power_sums(prm, 6)

# compared with the A(k, l) recursion, which never touches the coefficients,
# and with double-precision roots from the Jacobi matrix
spec = roots(prm)
for k in range(1, 7):
    print(f"k={k}  newton={table.M(k)}  A(k,1)={a_value(k, 1, prm)}  roots={power_sum(spec, k):.12g}")

# the same numbers as polynomials in p and q = alpha + p
for k in range(1, 4):
    print(f"M({k}) =", symbolic_power_sum(k))

# the top-degree part is the Narayana triangle
cert = certify_theorem2(5)
print("leading part k=5:", cert.leading)
print("remainder degree:", cert.remainder.total_degree, "pass:", cert.passed)
