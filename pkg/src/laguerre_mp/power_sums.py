"""Exact power sums of Laguerre roots.

``M(k)`` is the sum of the k-th powers of the roots of the monic Laguerre
polynomial, counted with multiplicity. It is obtained three ways:

* Newton's identities on the explicit coefficients (:func:`newton_power_sums`);
* the A(k, l) recursion, where ``A(k, 1) = M(k)`` (:func:`a_value`);
* symbolically, as a polynomial in ``p`` and ``q = alpha + p``
  (:func:`symbolic_power_sum`).

The symbolic form lets the top-degree part of ``M(k)`` be compared exactly
with the Narayana-weighted leading polynomial (:func:`certify_theorem2`).
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

from .errors import CertificationError, DomainError
from .laguerre_core import LaguerreParams, as_fraction, falling_factorial

__all__ = [
    "BivariatePoly",
    "PowerSumTable",
    "Theorem2Certificate",
    "falling_factorial_poly",
    "newton_power_sums",
    "a_value",
    "a_polynomial",
    "symbolic_power_sum",
    "homogeneous_part",
    "theorem2_leading",
    "certify_theorem2",
    "SYMBOLIC_K_LIMIT",
]

SYMBOLIC_K_LIMIT = 10


class BivariatePoly:
    """Polynomial in ``p`` and ``q`` with exact coefficients.

    ``terms`` maps ``(i, j)`` to the coefficient of ``p**i * q**j``; zero
    coefficients are never stored.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for key, c in (terms or {}).items():
            c = as_fraction(c)
            if c != 0:
                clean[(int(key[0]), int(key[1]))] = c
        self.terms = clean

    @classmethod
    def constant(cls, c):
        return cls({(0, 0): c})

    @classmethod
    def p(cls):
        return cls({(1, 0): 1})

    @classmethod
    def q(cls):
        return cls({(0, 1): 1})

    def is_zero(self):
        return not self.terms

    @property
    def total_degree(self):
        """Largest ``i + j`` over stored terms; -1 for the zero polynomial."""
        return max((i + j for i, j in self.terms), default=-1)

    def coeff(self, i, j):
        return self.terms.get((i, j), Fraction(0))

    def __eq__(self, other):
        if isinstance(other, BivariatePoly):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == BivariatePoly.constant(other).terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    @staticmethod
    def _coerce(other):
        if isinstance(other, BivariatePoly):
            return other
        return BivariatePoly.constant(other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for key, c in other.terms.items():
            out[key] = out.get(key, 0) + c
        return BivariatePoly(out)

    __radd__ = __add__

    def __neg__(self):
        return BivariatePoly({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        out = {}
        for (i1, j1), a in self.terms.items():
            for (i2, j2), b in other.terms.items():
                key = (i1 + i2, j1 + j2)
                out[key] = out.get(key, 0) + a * b
        return BivariatePoly(out)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        k = as_fraction(scalar)
        return BivariatePoly({key: c / k for key, c in self.terms.items()})

    def __call__(self, p, q):
        return self.evaluate(p, q)

    def evaluate(self, p, q):
        """Evaluate at ``(p, q)``; exact for exact inputs."""
        total = 0
        for (i, j), c in self.terms.items():
            total += c * p**i * q**j
        return total

    def sorted_terms(self):
        """Terms ordered by descending total degree, then ascending power of p."""
        return sorted(self.terms.items(), key=lambda kv: (-(kv[0][0] + kv[0][1]), kv[0][0]))

    def to_json(self):
        return [{"p": i, "q": j, "coeff": str(c)} for (i, j), c in self.sorted_terms()]

    def __repr__(self):
        return f"BivariatePoly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (i, j), c in self.sorted_terms():
            mono = "*".join(
                s for s in (
                    "" if i == 0 else ("p" if i == 1 else f"p^{i}"),
                    "" if j == 0 else ("q" if j == 1 else f"q^{j}"),
                ) if s
            )
            cs = str(c) if c.denominator == 1 else f"({c})"
            if not mono:
                parts.append(cs)
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{cs}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def falling_factorial_poly(var, j):
    """``(var)_j`` expanded as a polynomial in ``var``, one of ``'p'`` or ``'q'``."""
    if var not in ("p", "q"):
        raise DomainError(f"var must be 'p' or 'q', got {var!r}")
    if j < 0:
        raise DomainError("j must be non-negative")
    x = BivariatePoly.p() if var == "p" else BivariatePoly.q()
    return falling_factorial(x, j) if j else BivariatePoly.constant(1)


@dataclass(frozen=True)
class PowerSumTable:
    """Exact values ``M(1), ..., M(k_max)`` for one parameter pair."""

    params: LaguerreParams
    values: tuple

    @property
    def k_max(self):
        return len(self.values)

    def M(self, k):
        """Power sum of order ``k``; ``M(0)`` is the root count ``p``."""
        if k == 0:
            return Fraction(self.params.p)
        if not 1 <= k <= len(self.values):
            raise IndexError(f"k={k} outside 0..{len(self.values)}")
        return self.values[k - 1]

    __getitem__ = M


def _newton_solve(coef, k_max):
    # coef(j) is a_{p-j}; the monic leading coefficient a_p = 1 is implicit
    sums = []
    for k in range(1, k_max + 1):
        acc = -k * coef(k)
        for j in range(1, k):
            acc = acc - coef(j) * sums[k - j - 1]
        sums.append(acc)
    return sums


def _coefficient(p, q, j):
    if j > p:
        return Fraction(0)
    return (-1) ** j * Fraction(falling_factorial(q, j) * falling_factorial(p, j), _fact(j))


@lru_cache(maxsize=None)
def _fact(j):
    out = 1
    for i in range(2, j + 1):
        out *= i
    return out


def newton_power_sums(params, k_max, alpha=None):
    """Power sums ``M(1..k_max)`` from Newton's identities, exactly.

    Parameters
    ----------
    params : LaguerreParams or int
        Parameters, or the degree ``p`` with ``alpha`` given separately.
    k_max : int
        Highest power, at least 1.

    Returns
    -------
    PowerSumTable
    """
    prm = params if isinstance(params, LaguerreParams) else LaguerreParams(params, alpha or 0)
    if k_max < 1:
        raise DomainError("k_max must be >= 1")
    p, q = prm.p, prm.q
    values = _newton_solve(lambda j: _coefficient(p, q, j), k_max)
    return PowerSumTable(prm, tuple(values))


def _a_table(k, l, p, q, one):
    # A(1, m) = (q)_m p; A(kk, m) = sum_r p (q - r)_{m-r} A(kk-1, r) + A(kk-1, m+1)
    width = l + k - 1
    prev = {m: falling_factorial(q, m) * p for m in range(1, width + 1)}
    for kk in range(2, k + 1):
        width -= 1
        cur = {}
        for m in range(1, width + 1):
            acc = prev[m + 1]
            for r in range(1, m + 1):
                acc = acc + p * falling_factorial(q - r, m - r) * prev[r]
            cur[m] = acc
        prev = cur
    return prev[l] * one


def a_value(k, l, params, alpha=None):
    """Exact ``A(k, l)``; in particular ``A(k, 1) = M(k)``."""
    if k < 1 or l < 1:
        raise DomainError("a_value needs k >= 1 and l >= 1")
    prm = params if isinstance(params, LaguerreParams) else LaguerreParams(params, alpha or 0)
    return Fraction(_a_table(k, l, prm.p, prm.q, 1))


@lru_cache(maxsize=None)
def a_polynomial(k, l):
    """``A(k, l)`` as a polynomial in ``p`` and ``q``."""
    if k < 1 or l < 1:
        raise DomainError("a_polynomial needs k >= 1 and l >= 1")
    return _a_table(k, l, BivariatePoly.p(), BivariatePoly.q(), BivariatePoly.constant(1))


@lru_cache(maxsize=None)
def _symbolic_coefficient(j):
    return (falling_factorial_poly("q", j) * falling_factorial_poly("p", j)
            * Fraction((-1) ** j, _fact(j)))


@lru_cache(maxsize=None)
def _symbolic_sums(k):
    return tuple(_newton_solve(_symbolic_coefficient, k))


def symbolic_power_sum(k, max_k=SYMBOLIC_K_LIMIT):
    """``M(k)`` as an exact polynomial in ``p`` and ``q = alpha + p``.

    The falling factorial ``(p)_j`` vanishes at integers ``p < j``, so the
    result is valid for every positive integer ``p``, not only ``p >= k``.
    """
    if k < 1:
        raise DomainError("k must be >= 1")
    if k > max_k:
        raise DomainError(f"k={k} exceeds the symbolic limit {max_k}; raise max_k explicitly")
    return _symbolic_sums(k)[k - 1]


def homogeneous_part(poly, d):
    """Terms of total degree exactly ``d``."""
    if d < 0:
        raise DomainError("d must be non-negative")
    return BivariatePoly({key: c for key, c in poly.terms.items() if key[0] + key[1] == d})


def theorem2_leading(k):
    """``sum_j (1/k) C(k, j) C(k, j-1) p^j q^(k-j+1)``."""
    if k < 1:
        raise DomainError("k must be >= 1")
    return BivariatePoly({
        (j, k - j + 1): Fraction(comb(k, j) * comb(k, j - 1), k) for j in range(1, k + 1)
    })


@dataclass(frozen=True)
class Theorem2Certificate:
    k: int
    power_sum: BivariatePoly
    leading: BivariatePoly
    remainder: BivariatePoly
    passed: bool

    def to_json(self):
        return {
            "k": self.k,
            "leading_terms": self.leading.to_json(),
            "remainder_terms": self.remainder.to_json(),
            "pass": self.passed,
        }


def certify_theorem2(k, raise_on_failure=True, max_k=SYMBOLIC_K_LIMIT):
    """Check the leading-term formula for ``M(k)`` exactly.

    The degree ``k + 1`` part of :func:`symbolic_power_sum` must equal
    :func:`theorem2_leading` and everything else must have total degree at
    most ``k``.

    Raises
    ------
    CertificationError
        On mismatch (unless ``raise_on_failure`` is false), with the differing
        terms attached.
    """
    power_sum = symbolic_power_sum(k, max_k=max_k)
    top = homogeneous_part(power_sum, k + 1)
    claimed = theorem2_leading(k)
    remainder = power_sum - top
    diff = top - claimed
    passed = diff.is_zero() and remainder.total_degree <= k and power_sum.total_degree == k + 1
    if not passed and raise_on_failure:
        raise CertificationError(
            f"leading terms of M({k}) disagree with the Narayana formula", dict(diff.terms)
        )
    return Theorem2Certificate(k, power_sum, top, remainder, passed)
