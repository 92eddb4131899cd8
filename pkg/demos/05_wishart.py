"""
Sample covariance matrices
==========================

The expected characteristic polynomial of XX^T is a Laguerre polynomial, and
the spectrum of XX^T / p follows the same Marchenko-Pastur law as the roots.
"""

from fractions import Fraction

from laguerre_mp import LaguerreParams, monic_coeffs
from laguerre_mp.marchenko_pastur import moment, moment_tilde
from laguerre_mp.random_matrix import esd_moment_mc, exact_rademacher_expectation, mc_expected_charpoly

# exact: average over all 2^(pn) sign matrices
for p, n in [(1, 2), (2, 3), (2, 4), (3, 5)]:
    print(f"p={p} n={n}: E det(x - XX^T) = {exact_rademacher_expectation(p, n)}"
          f"   Laguerre: {monic_coeffs(LaguerreParams(p, n - p))}")

# Monte Carlo with Gaussian entries; rerunning with the same seed gives the same bits
est = mc_expected_charpoly(4, 6, "gaussian", 100_000, seed=7)
for i, (m, s, z) in enumerate(zip(est.coeff_means, est.coeff_stderrs, est.z_scores())):
    print(f"x^{i}: mean={m:12.4f}  stderr={s:8.4f}  z={z:+.2f}")

# spectral moments, both scalings
both = esd_moment_mc(100, 200, "gaussian", 200, 4, seed=1, normalization="both")
for (k, mp_, _), (_, mn, _) in zip(both["p"], both["n"]):
    print(f"k={k}: XX^T/p {mp_:.3f} vs {float(moment(1, k)):.3f}   "
          f"XX^T/n {mn:.4f} vs {float(moment_tilde(Fraction(1, 2), k)):.4f}")
