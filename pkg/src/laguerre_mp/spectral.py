"""Numerical roots of Laguerre polynomials and their normalised moments.

For ``alpha > -1`` the roots are the eigenvalues of the symmetric
tridiagonal (Jacobi) matrix of the monic recursion::

    diagonal      2i + alpha + 1          i = 0 .. p-1
    off-diagonal  sqrt(i (i + alpha))     i = 1 .. p-1

Integer ``alpha`` in ``[-p+1, -1]`` is reduced to ``(p + alpha, -alpha)``
plus a root at zero of multiplicity ``-alpha``. Everything else goes through
a companion matrix and is only trusted for ``p <= 30``.
"""

import csv
import io
import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np
from scipy.linalg import eigh_tridiagonal

from . import marchenko_pastur as mp
from .errors import DomainError
from .laguerre_core import LaguerreParams, as_fraction, conjugate_monic, factor_nonpositive, \
    monic_coeffs

__all__ = [
    "Spectrum",
    "ConvergenceRow",
    "InequalityReport",
    "ComplexMomentWarning",
    "jacobi_matrix",
    "roots",
    "power_sum",
    "empirical_moment",
    "f_p",
    "scaled_moment_gen",
    "alpha_for",
    "convergence_table",
    "convergence_csv",
    "largest_root_bound_check",
    "inequality_fp_le_gp",
    "COMPANION_P_LIMIT",
]

COMPANION_P_LIMIT = 30


class ComplexMomentWarning(UserWarning):
    """A moment was requested for a spectrum with non-real roots; the real part is returned."""


@dataclass(frozen=True)
class Spectrum:
    """Roots of one Laguerre polynomial.

    ``real_roots`` excludes the zero roots, which are only counted in
    ``zero_multiplicity``. ``complex_roots`` holds roots with non-negligible
    imaginary part.
    """

    real_roots: np.ndarray
    zero_multiplicity: int = 0
    complex_roots: np.ndarray = field(default_factory=lambda: np.empty(0, dtype=complex))

    @property
    def p(self):
        return len(self.real_roots) + self.zero_multiplicity + len(self.complex_roots)

    @property
    def is_real(self):
        return len(self.complex_roots) == 0

    def all_roots(self):
        zeros = np.zeros(self.zero_multiplicity)
        if self.is_real:
            return np.sort(np.concatenate([zeros, self.real_roots]))
        return np.concatenate([zeros, self.real_roots, self.complex_roots])

    def to_json(self):
        return {
            "p": self.p,
            "zero_multiplicity": self.zero_multiplicity,
            "real_roots": [float(x) for x in self.real_roots],
            "complex_roots": [[float(z.real), float(z.imag)] for z in self.complex_roots],
        }


def jacobi_matrix(p, alpha):
    """Diagonal and off-diagonal of the Jacobi matrix (``alpha > -1``)."""
    alpha = float(alpha)
    i = np.arange(p, dtype=float)
    diag = 2.0 * i + alpha + 1.0
    j = np.arange(1, p, dtype=float)
    off = np.sqrt(j * (j + alpha))
    return diag, off


def _companion_roots(prm):
    poly = monic_coeffs(prm)
    zeros = poly.trailing_zeros()
    rest = poly.coeffs[zeros:]
    if prm.p > COMPANION_P_LIMIT:
        warnings.warn(f"companion-matrix roots for p={prm.p} exceed the trusted range "
                      f"p <= {COMPANION_P_LIMIT}", RuntimeWarning, stacklevel=3)
    if len(rest) <= 1:
        found = np.empty(0, dtype=complex)
    else:
        found = np.roots([float(c) for c in reversed(rest)]).astype(complex)
    tiny = 1e-10 * np.maximum(1.0, np.abs(found))
    is_real = np.abs(found.imag) <= tiny
    real = np.sort(found[is_real].real)
    cplx = found[~is_real]
    cplx = cplx[np.lexsort((cplx.imag, cplx.real))]
    return Spectrum(real, zeros, cplx)


def roots(params, alpha=None):
    """Roots of the monic Laguerre polynomial of degree ``p >= 1``."""
    prm = params if isinstance(params, LaguerreParams) else LaguerreParams(params, alpha or 0)
    if prm.p < 1:
        raise DomainError("roots needs p >= 1")
    a = prm.alpha
    if a > -1:
        diag, off = jacobi_matrix(prm.p, a)
        if prm.p == 1:
            vals = diag.copy()
        else:
            vals = eigh_tridiagonal(diag, off, eigvals_only=True)
        return Spectrum(np.sort(vals), 0)
    if a.denominator == 1 and -prm.p + 1 <= a <= -1:
        m, reduced = factor_nonpositive(prm)
        inner = roots(reduced)
        return Spectrum(inner.real_roots, m + inner.zero_multiplicity, inner.complex_roots)
    return _companion_roots(prm)


def power_sum(spec, k):
    """Numerical sum of k-th powers of all roots (real part for complex spectra)."""
    total = math.fsum(spec.real_roots.astype(float) ** k) if len(spec.real_roots) else 0.0
    if k == 0:
        total += spec.zero_multiplicity
    if not spec.is_real:
        total += float(np.sum(spec.complex_roots ** k).real)
    return total


def empirical_moment(spec, k, scale=None):
    """k-th moment of the uniform measure on ``roots / scale``; ``scale`` defaults to ``p``.

    Spectra with complex roots give the real part of the complex moment and
    emit :class:`ComplexMomentWarning`.
    """
    if k < 0:
        raise DomainError("k must be non-negative")
    n = spec.p
    scale = float(n if scale is None else scale)
    if scale <= 0:
        raise DomainError("scale must be positive")
    vals = spec.real_roots / scale
    total = math.fsum(vals**k) if len(vals) else 0.0
    if k == 0:
        total += spec.zero_multiplicity
    if not spec.is_real:
        warnings.warn("spectrum has non-real roots; returning the real part of the moment",
                      ComplexMomentWarning, stacklevel=2)
        total += float(np.sum((spec.complex_roots / scale) ** k).real)
    return total / n


@lru_cache(maxsize=256)
def _integer_conjugate(p, alpha):
    # conjugate monic polynomial scaled to integer coefficients: (coeffs, denominator)
    poly = conjugate_monic(LaguerreParams(p, alpha))
    den = 1
    for c in poly.coeffs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    return tuple(int(c * den) for c in poly.coeffs), den


def _eval_scaled(p, alpha, num, den):
    # returns den^p * Lhat_p(num/den) as an exact Fraction
    coeffs, cden = _integer_conjugate(p, alpha)
    acc = 0
    bpow = 1
    for c in reversed(coeffs):
        acc = acc * num + c * bpow
        bpow *= den
    # acc = sum c_i num^i den^(deg - i); rescale to den^p
    deg = len(coeffs) - 1
    return Fraction(acc * den ** (p - deg), cden)


def f_p(params, z, alpha=None):
    """Ratio ``Lhat_{p-1}(z/p) / Lhat_p(z/p)`` of conjugate monic Laguerre polynomials.

    Both polynomials are evaluated exactly at the rational value of ``z / p``
    (their coefficients overflow doubles long before ``p = 200``) and only the
    ratio is rounded.
    """
    prm = params if isinstance(params, LaguerreParams) else LaguerreParams(params, alpha or 0)
    p = prm.p
    if p < 1:
        raise DomainError("f_p needs p >= 1")
    if z < 0:
        raise DomainError("f_p needs z >= 0")
    w = Fraction(z) / p if not isinstance(z, Fraction) else z / p
    bottom = _eval_scaled(p, prm.alpha, w.numerator, w.denominator)
    if bottom <= 0:
        raise DomainError(f"conjugate polynomial is not positive at z={z} (p={p})")
    top = _eval_scaled(p - 1, prm.alpha, w.numerator, w.denominator)
    # both are scaled by den^p and den^(p-1) respectively
    return float(top * w.denominator / bottom)


def scaled_moment_gen(params, z, alpha=None):
    """Normalised moment generating function ``((alpha+p)/p) z f_p(z) + 1``."""
    prm = params if isinstance(params, LaguerreParams) else LaguerreParams(params, alpha or 0)
    return float(prm.q / prm.p) * z * f_p(prm, z) + 1.0


def alpha_for(c, p):
    """``round(c p)`` with ties toward zero, clamped to ``[-p+1, -1]`` when ``-1 < c < 0``."""
    x = Fraction(c) * p
    ax = abs(x)
    n = math.floor(ax)
    if ax - n > Fraction(1, 2):
        n += 1
    n = n if x >= 0 else -n
    if -1 < c < 0:
        n = min(max(n, -p + 1), -1)
    return n


@dataclass(frozen=True)
class ConvergenceRow:
    p: int
    alpha: int
    k: int
    empirical_moment: float
    mp_moment: float
    abs_error: float


def convergence_table(c, p_list, k_max):
    """Empirical root moments (scale ``p``) against the limit moments, for each ``p``.

    Rows come back ordered by ``p`` (as given) and then ``k = 1..k_max``.
    """
    if not c > -1:
        raise DomainError(f"c must exceed -1, got {c}")
    rows = []
    for p in p_list:
        alpha = alpha_for(c, p)
        if -1 < c < 0 and not (-p + 1 <= alpha <= -1):
            raise DomainError(f"alpha_p={alpha} is not in [-p+1, -1] for p={p}")
        spec = roots(LaguerreParams(p, alpha))
        for k in range(1, k_max + 1):
            emp = empirical_moment(spec, k, p)
            ref = float(mp.moment(as_fraction(c) if not isinstance(c, float) else c, k))
            rows.append(ConvergenceRow(p, alpha, k, emp, ref, abs(emp - ref)))
    return rows


def convergence_csv(rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["p", "alpha", "k", "empirical_moment", "mp_moment", "abs_error"])
    for r in rows:
        writer.writerow([r.p, r.alpha, r.k, repr(r.empirical_moment), repr(r.mp_moment),
                         repr(r.abs_error)])
    return buf.getvalue()


def largest_root_bound_check(params, alpha=None):
    """True when the largest root is at most ``4p + 2 alpha + 3`` (``alpha > -1``)."""
    prm = params if isinstance(params, LaguerreParams) else LaguerreParams(params, alpha or 0)
    if not prm.alpha > -1:
        raise DomainError("the bound is stated for alpha > -1")
    spec = roots(prm)
    return bool(spec.real_roots.max() <= 4 * prm.p + 2 * float(prm.alpha) + 3)


@dataclass
class InequalityReport:
    p: int
    alpha: Fraction
    z: list
    f_values: list
    g_values: list
    slack: float
    violations: list

    @property
    def ok(self):
        return not self.violations

    @property
    def max_excess(self):
        return max(f - g for f, g in zip(self.f_values, self.g_values))


def inequality_fp_le_gp(params, z_grid=None, alpha=None, slack=1e-10, points=50, fraction=0.9):
    """Check ``f_p(z) <= g_p_minus(z) + slack`` on a grid below ``zeta_threshold``.

    The default grid has ``points`` equally spaced values in
    ``[0, fraction * zeta]``.
    """
    prm = params if isinstance(params, LaguerreParams) else LaguerreParams(params, alpha or 0)
    if prm.alpha < 0:
        raise DomainError("inequality is stated for alpha >= 0")
    zeta = mp.zeta_threshold(prm.p, prm.alpha)
    if z_grid is None:
        z_grid = np.linspace(0.0, fraction * zeta, points)
    zs = [float(z) for z in z_grid]
    if any(z >= zeta for z in zs):
        raise DomainError("grid must stay below zeta_threshold")
    fs = [f_p(prm, z) for z in zs]
    gs = [mp.g_p_minus(prm.p, prm.alpha, z) for z in zs]
    bad = [(z, f, g) for z, f, g in zip(zs, fs, gs) if f > g + slack]
    return InequalityReport(prm.p, prm.alpha, zs, fs, gs, slack, bad)
