"""Exact Laguerre polynomials in standard, monic and conjugate form.

All coefficients are :class:`fractions.Fraction` values, so every identity in
this module can be checked with ``==`` rather than with a tolerance.

Conventions
-----------
``standard_coeffs(p, alpha)`` is

    L_p(x) = sum_j (-1)^j binom(alpha + p, p - j) x^j / j!

``monic_coeffs`` is ``(-1)^p p! L_p``, whose coefficient of ``z^(p-j)`` is
``(-1)^j (p)_j (alpha + p)_j / j!`` with ``(b)_j`` the falling factorial.
The conjugate of a degree-``d`` polynomial ``f`` is ``z^d f(1/z)``.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

from .errors import DomainError, InvalidDegreeError

__all__ = [
    "DensePoly",
    "LaguerreParams",
    "as_fraction",
    "falling_factorial",
    "monic_coeffs",
    "standard_coeffs",
    "evaluate",
    "conjugate",
    "three_term_step",
    "conjugate_three_term_step",
    "conjugate_monic",
    "conjugate_derivative",
    "factor_nonpositive",
]


def as_fraction(value):
    """Convert ``value`` to a Fraction without losing information.

    Accepts ints, Fractions, other rationals and strings such as ``"-7/3"``.
    Floats are refused; use :meth:`LaguerreParams.from_real` or
    ``Fraction(x).limit_denominator(...)`` to choose an approximation.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not valid rational values")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(
        f"expected an exact rational (int, Fraction or 'num/den'), got {type(value).__name__}"
    )


def falling_factorial(x, k):
    """Return ``x (x - 1) ... (x - k + 1)``; the empty product is 1."""
    if k < 0:
        raise DomainError("falling factorial needs k >= 0")
    out = 1
    for i in range(k):
        out *= x - i
    return out


class DensePoly:
    """Univariate polynomial with exact rational coefficients.

    Coefficients are stored in ascending order of degree with trailing zeros
    stripped, so the zero polynomial has an empty coefficient tuple and
    degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def from_descending(cls, coeffs):
        return cls(list(coeffs)[::-1])

    @classmethod
    def monomial(cls, degree, coeff=1):
        return cls([0] * degree + [coeff])

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def coeff(self, i):
        """Coefficient of ``z**i`` (zero beyond the stored range)."""
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def leading(self):
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, DensePoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == DensePoly([other]).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"DensePoly({[str(c) for c in self.coeffs]})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mono = "" if i == 0 else ("z" if i == 1 else f"z^{i}")
            cs = str(c) if c.denominator == 1 else f"({c})"
            if not mono:
                terms.append(cs)
            elif c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{cs}*{mono}")
        return " + ".join(terms).replace("+ -", "- ")

    @staticmethod
    def _coerce(other):
        if isinstance(other, DensePoly):
            return other
        return DensePoly([other])

    def __add__(self, other):
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return DensePoly([self.coeff(i) + other.coeff(i) for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return DensePoly([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, DensePoly):
            k = as_fraction(other)
            return DensePoly([k * c for c in self.coeffs])
        if not self.coeffs or not other.coeffs:
            return DensePoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return DensePoly(out)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        k = as_fraction(scalar)
        return DensePoly([c / k for c in self.coeffs])

    def shift(self, m):
        """Multiply by ``z**m``."""
        if m < 0:
            raise DomainError("shift needs m >= 0")
        if not self.coeffs:
            return DensePoly()
        return DensePoly([0] * m + list(self.coeffs))

    def derivative(self):
        return DensePoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def trailing_zeros(self):
        """Multiplicity of 0 as a root (0 for the zero polynomial)."""
        for i, c in enumerate(self.coeffs):
            if c != 0:
                return i
        return 0

    def __call__(self, x):
        return evaluate(self, x)

    def to_floats(self):
        return [float(c) for c in self.coeffs]


def evaluate(poly, x):
    """Horner evaluation.

    Exact inputs (int, Fraction) give an exact Fraction; floats and complex
    numbers go through float arithmetic.
    """
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        acc = Fraction(0)
        for c in reversed(poly.coeffs):
            acc = acc * x + c
        return acc
    acc = 0.0
    for c in reversed(poly.coeffs):
        acc = acc * x + float(c)
    return acc


@dataclass(frozen=True)
class LaguerreParams:
    """Degree ``p`` and exact parameter ``alpha``."""

    p: int
    alpha: Fraction = Fraction(0)

    def __post_init__(self):
        if isinstance(self.p, bool) or not isinstance(self.p, int):
            raise TypeError("p must be an int")
        if self.p < 0:
            raise DomainError(f"degree p must be non-negative, got {self.p}")
        object.__setattr__(self, "alpha", as_fraction(self.alpha))

    @classmethod
    def from_real(cls, p, alpha, max_denominator=10**6):
        """Build params from a float ``alpha`` via its best rational
        approximation with denominator at most ``max_denominator``
        (continued-fraction convergents, as in ``Fraction.limit_denominator``).
        """
        return cls(p, Fraction(alpha).limit_denominator(max_denominator))

    @property
    def q(self):
        """``alpha + p``."""
        return self.alpha + self.p


def _params(params, alpha=None):
    if isinstance(params, LaguerreParams):
        return params
    return LaguerreParams(params, 0 if alpha is None else alpha)


@lru_cache(maxsize=512)
def _monic(p, alpha):
    q = alpha + p
    desc = []
    for j in range(p + 1):
        desc.append((-1) ** j * Fraction(falling_factorial(p, j) * falling_factorial(q, j))
                    / _factorial(j))
    return DensePoly.from_descending(desc)


@lru_cache(maxsize=None)
def _factorial(j):
    out = 1
    for i in range(2, j + 1):
        out *= i
    return out


def monic_coeffs(params, alpha=None):
    """Monic Laguerre polynomial of degree ``p``.

    Accepts a :class:`LaguerreParams` or ``(p, alpha)``.

    >>> str(monic_coeffs(2, 0))
    'z^2 - 4*z + 2'
    """
    prm = _params(params, alpha)
    return _monic(prm.p, prm.alpha)


def standard_coeffs(params, alpha=None):
    """Laguerre polynomial in the classical normalisation ``L_p(0) = binom(p + alpha, p)``."""
    prm = _params(params, alpha)
    scale = Fraction((-1) ** prm.p, _factorial(prm.p))
    return monic_coeffs(prm) * scale


def conjugate(poly, declared_degree):
    """Return ``z^d poly(1/z)`` for the declared degree ``d``.

    The declared degree matters when ``poly`` has a zero constant term; the
    reversal then has trailing zeros that are simply dropped.
    """
    if declared_degree < poly.degree:
        raise InvalidDegreeError(
            f"declared degree {declared_degree} is below the polynomial degree {poly.degree}"
        )
    return DensePoly([poly.coeff(declared_degree - i) for i in range(declared_degree + 1)])


def conjugate_monic(params, alpha=None):
    """Conjugate of the monic Laguerre polynomial, taken at its own degree."""
    prm = _params(params, alpha)
    return conjugate(monic_coeffs(prm), prm.p)


def three_term_step(L_prev, L_cur, p, alpha):
    """Advance the classical recursion by one degree.

    ``(p + 1) L_{p+1} = (2p + alpha + 1 - z) L_p - (p + alpha) L_{p-1}``,
    seeded with ``L_{-1} = 0`` and ``L_0 = 1``.
    """
    alpha = as_fraction(alpha)
    z = DensePoly([0, 1])
    nxt = (DensePoly([2 * p + alpha + 1]) - z) * L_cur - L_prev * (p + alpha)
    return nxt / (p + 1)


def conjugate_three_term_step(Lhat_prev, Lhat_cur, p, alpha):
    """Advance the conjugate (monic, reversed) recursion by one degree.

    ``Lhat_{p+1} = [1 - (alpha + 2p + 1) z] Lhat_p - z^2 (p + alpha) p Lhat_{p-1}``.
    """
    alpha = as_fraction(alpha)
    first = DensePoly([1, -(alpha + 2 * p + 1)]) * Lhat_cur
    second = Lhat_prev.shift(2) * ((p + alpha) * p)
    return first - second


def conjugate_derivative(params, alpha=None):
    """Formal derivative of the conjugate monic polynomial of degree ``p``."""
    prm = _params(params, alpha)
    if prm.p < 1:
        raise DomainError("conjugate_derivative needs p >= 1")
    return conjugate_monic(prm).derivative()


def factor_nonpositive(params, alpha=None):
    """Split off the zero root for integer ``alpha`` in ``[-p+1, -1]``.

    Returns ``(m, reduced)`` with ``m = -alpha`` and
    ``monic(params) == z^m * monic(reduced)``, where
    ``reduced = (p + alpha, -alpha)``.
    """
    prm = _params(params, alpha)
    a = prm.alpha
    if a.denominator != 1 or not (-prm.p + 1 <= a <= -1):
        raise DomainError(
            f"alpha must be an integer in [{-prm.p + 1}, -1] for p={prm.p}, got {a}"
        )
    m = int(-a)
    return m, LaguerreParams(prm.p - m, m)
