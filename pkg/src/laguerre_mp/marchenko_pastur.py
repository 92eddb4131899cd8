"""Marchenko-Pastur laws and the finite-p comparison functions.

Two parametrisations are used:

``mp_law(c)``
    limit of the roots of ``L_p^{(alpha_p)}`` divided by ``p`` when
    ``alpha_p / p -> c``; support ``[(sqrt(c+1) - 1)^2, (sqrt(c+1) + 1)^2]``
    and an atom ``-c`` at zero when ``-1 < c < 0``.
``tilde_mp_law(a)``
    the usual sample-covariance law of ``XX^T / n`` with ``p / n -> a``.

They are related by ``a = 1 / (c + 1)`` and a dilation by ``c + 1``.

The quadratic-root formulas for the generating function and for the fixed
points are evaluated in rationalised form ``2 / (B + sqrt(D))``, which equals
the textbook ``(B - sqrt(D)) / (2 A)`` but has no cancellation near ``z = 0``.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from math import comb

import mpmath

from .errors import AccuracyError, DomainError

__all__ = [
    "MPLaw",
    "TildeMPLaw",
    "mp_law",
    "tilde_mp_law",
    "density",
    "tilde_density",
    "moment",
    "moment_tilde",
    "scaling_relation_check",
    "quadrature_moment",
    "tilde_quadrature_moment",
    "generating_fn",
    "generating_fn_radius",
    "f_c_minus",
    "fixed_point_residual",
    "zeta_threshold",
    "g_p_minus",
    "g_p_residual",
]


def _is_exact(x):
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


@dataclass(frozen=True)
class MPLaw:
    c: float
    x_minus: float
    x_plus: float
    atom: float

    def to_json(self):
        return {"c": float(self.c), "x_minus": self.x_minus, "x_plus": self.x_plus,
                "atom": self.atom}

    @property
    def continuous_mass(self):
        return 1.0 - self.atom


@dataclass(frozen=True)
class TildeMPLaw:
    a: float
    x_minus: float
    x_plus: float
    atom_weight: float

    def to_json(self):
        return {"a": float(self.a), "x_minus": self.x_minus, "x_plus": self.x_plus,
                "atom_weight": self.atom_weight}


def mp_law(c):
    """Law record for ``c > -1``."""
    if not c > -1:
        raise DomainError(f"c must exceed -1, got {c}")
    s = math.sqrt(float(c) + 1.0)
    atom = -float(c) if c < 0 else 0.0
    return MPLaw(c, (s - 1.0) ** 2, (s + 1.0) ** 2, atom)


def tilde_mp_law(a):
    """Law record for the ``XX^T / n`` parametrisation, ``a = p / n > 0``.

    The atom at zero is ``1 - 1/a`` for ``a > 1`` and absent otherwise.
    """
    if not a > 0:
        raise DomainError(f"a must be positive, got {a}")
    s = math.sqrt(float(a))
    return TildeMPLaw(a, (1.0 - s) ** 2, (1.0 + s) ** 2, max(0.0, 1.0 - 1.0 / float(a)))


def _law(law_or_c):
    return law_or_c if isinstance(law_or_c, MPLaw) else mp_law(law_or_c)


def density(law, x):
    """Density of the continuous part; zero outside the support and at ``x = 0``."""
    law = _law(law)
    if x <= 0 or x < law.x_minus or x > law.x_plus:
        return 0.0
    return math.sqrt(max(0.0, (law.x_plus - x) * (x - law.x_minus))) / (2.0 * math.pi * x)


def tilde_density(law, x):
    if not isinstance(law, TildeMPLaw):
        law = tilde_mp_law(law)
    if x <= 0 or x < law.x_minus or x > law.x_plus:
        return 0.0
    rad = max(0.0, (x - law.x_minus) * (law.x_plus - x))
    return math.sqrt(rad) / (2.0 * math.pi * float(law.a) * x)


def _narayana_poly(k, base, offset):
    # sum_j (1/k) C(k, j) C(k, j-1) base^(offset(j))
    total = 0
    for j in range(1, k + 1):
        weight = Fraction(comb(k, j) * comb(k, j - 1), k)
        term = base ** offset(j)
        total += weight * term if _is_exact(base) else float(weight) * term
    return total


def moment(c, k):
    """k-th moment of ``mp_law(c)``; exact Fraction when ``c`` is exact.

    >>> moment(0, 3)
    Fraction(5, 1)
    """
    if k < 0:
        raise DomainError("k must be non-negative")
    if k == 0:
        return Fraction(1) if _is_exact(c) else 1.0
    return _narayana_poly(k, c + 1, lambda j: k - j + 1)


def moment_tilde(a, k):
    """k-th moment of ``tilde_mp_law(a)``; exact when ``a`` is exact."""
    if k < 0:
        raise DomainError("k must be non-negative")
    if k == 0:
        return Fraction(1) if _is_exact(a) else 1.0
    return _narayana_poly(k, a, lambda j: j - 1)


def scaling_relation_check(c, k):
    """``moment(c, k) - (c+1)^k * moment_tilde(1/(c+1), k)``; zero exactly for rational c."""
    if not c > -1:
        raise DomainError(f"c must exceed -1, got {c}")
    if _is_exact(c):
        c = Fraction(c)
        return moment(c, k) - (c + 1) ** k * moment_tilde(1 / (c + 1), k)
    return moment(c, k) - (c + 1) ** k * moment_tilde(1.0 / (c + 1), k)


def _sin2_quadrature(x_minus, x_plus, k, scale, tol):
    # x = x- + (x+ - x-) sin^2(t) turns sqrt((x+ - x)(x - x-)) dx into
    # 2 (x+ - x-)^2 sin^2 cos^2 dt; the 1/x of the density stays smooth
    with mpmath.workdps(40):
        lo, hi = mpmath.mpf(x_minus), mpmath.mpf(x_plus)
        width = hi - lo

        def integrand(t):
            s2 = mpmath.sin(t) ** 2
            x = lo + width * s2
            return width**2 * s2 * (1 - s2) * x ** (k - 1)

        value, err = mpmath.quad(integrand, [0, mpmath.pi / 4, mpmath.pi / 2], error=True)
        value = value / (mpmath.pi * scale)
        err = err / (mpmath.pi * scale)
    if err > tol:
        raise AccuracyError(f"quadrature error estimate {float(err):.3e} exceeds {tol:.1e}",
                            float(err))
    return value


def _endpoints(cp1):
    # endpoints in high precision; sqrt of an exact rational is evaluated by mpmath
    with mpmath.workdps(40):
        s = mpmath.sqrt(mpmath.mpf(cp1.numerator) / cp1.denominator if _is_exact(cp1) else mpmath.mpf(cp1))
        return (s - 1) ** 2, (s + 1) ** 2


def quadrature_moment(c, k, tol=1e-10):
    """``int x^k d mu_c`` by high-precision quadrature, atom included.

    Independent of the closed form in :func:`moment`. Raises
    :class:`AccuracyError` if the error estimate exceeds ``tol``.
    """
    if not c > -1:
        raise DomainError(f"c must exceed -1, got {c}")
    if k < 0:
        raise DomainError("k must be non-negative")
    cp1 = Fraction(c) + 1 if _is_exact(c) else float(c) + 1.0
    x_minus, x_plus = _endpoints(cp1)
    value = _sin2_quadrature(x_minus, x_plus, k, 1, tol)
    atom = -float(c) if c < 0 else 0.0
    return float(value) + (atom if k == 0 else 0.0)


def tilde_quadrature_moment(a, k, tol=1e-10):
    """``int x^k d mu~_a`` by quadrature, atom ``max(0, 1 - 1/a)`` included."""
    if not a > 0:
        raise DomainError(f"a must be positive, got {a}")
    with mpmath.workdps(40):
        s = mpmath.sqrt(mpmath.mpf(Fraction(a).numerator) / Fraction(a).denominator
                        if _is_exact(a) else mpmath.mpf(a))
        x_minus, x_plus = (1 - s) ** 2, (1 + s) ** 2
    value = _sin2_quadrature(x_minus, x_plus, k, float(a), tol)
    atom = max(0.0, 1.0 - 1.0 / float(a))
    return float(value) + (atom if k == 0 else 0.0)


def generating_fn_radius(c):
    """Right end ``1 / (sqrt(c+1) + 1)^2`` of the generating-function domain."""
    return 1.0 / (math.sqrt(float(c) + 1.0) + 1.0) ** 2


def generating_fn(c, z):
    """Moment generating function ``sum_k moment(c, k) z^k``.

    Closed form ``(1 - cz - sqrt((1 - cz)^2 - 4z)) / (2z)``, computed as
    ``2 / (1 - cz + sqrt(...))``.
    """
    c = float(c)
    if not (0.0 <= z < generating_fn_radius(c)):
        raise DomainError(f"z={z} outside [0, {generating_fn_radius(c)})")
    b = 1.0 - c * z
    disc = b * b - 4.0 * z
    if disc < 0:
        raise DomainError(f"negative discriminant at z={z}")
    return 2.0 / (b + math.sqrt(disc))


def f_c_minus(c, z):
    """Smaller root in ``xi`` of ``1 = [1 - (c+2) z] xi - (c+1) z^2 xi^2``; equals 1 at z = 0."""
    c = float(c)
    if c == -1.0:
        raise DomainError("c = -1 is excluded")
    if z < 0:
        raise DomainError("z must be non-negative")
    b = 1.0 - (c + 2.0) * z
    disc = b * b - 4.0 * (c + 1.0) * z * z
    if disc < 0 or b <= 0:
        raise DomainError(f"no real fixed point at c={c}, z={z}")
    return 2.0 / (b + math.sqrt(disc))


def fixed_point_residual(c, z, xi):
    """``[1 - (c+2) z] xi - (c+1) z^2 xi^2 - 1``."""
    c = float(c)
    return (1.0 - (c + 2.0) * z) * xi - (c + 1.0) * z * z * xi * xi - 1.0


def _ab(p, alpha):
    alpha = float(alpha)
    a = (alpha + 2 * p - 1) / p
    b = (p - 1) * (alpha + p - 1) / p**2
    return a, b


def zeta_threshold(p, alpha):
    """``1 / (a + 2 sqrt(b))`` with ``a = (alpha + 2p - 1)/p`` and ``b = (p-1)(alpha + p - 1)/p^2``."""
    if p < 1:
        raise DomainError("p must be >= 1")
    if alpha < 0:
        raise DomainError("zeta_threshold needs alpha >= 0")
    a, b = _ab(p, alpha)
    return 1.0 / (a + 2.0 * math.sqrt(b))


def g_p_minus(p, alpha, z):
    """Smaller non-negative root of ``1 = [1 - a z] xi - b z^2 xi^2``, for ``0 <= z < zeta``."""
    zeta = zeta_threshold(p, alpha)
    if not (0.0 <= z < zeta):
        raise DomainError(f"z={z} outside [0, zeta={zeta})")
    a, b = _ab(p, alpha)
    lin = 1.0 - a * z
    disc = lin * lin - 4.0 * b * z * z
    return 2.0 / (lin + math.sqrt(max(disc, 0.0)))


def g_p_residual(p, alpha, z, xi):
    a, b = _ab(p, alpha)
    return (1.0 - a * z) * xi - b * z * z * xi * xi - 1.0
