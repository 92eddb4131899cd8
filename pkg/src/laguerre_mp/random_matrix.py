"""Random sample-covariance matrices ``XX^T`` and their spectra.

Sampling is counter based. Trial ``t`` of a run with key ``seed`` reads the
Philox4x64 stream at counter blocks ``[t * B, (t + 1) * B)``, where
``B = ceil(p * n / 4)``; entry ``(i, j)`` uses word ``i * n + j`` of that
window. A trial therefore never depends on which other trials were drawn, in
what order, or in what batch size.

Entry laws
    ``rademacher``  sign of the top bit of the word; bit-exact on every platform.
    ``gaussian``    inverse normal CDF (``scipy.special.ndtri``) applied to
                    ``(w >> 11 + 0.5) * 2**-53``.
"""

import json
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import product

import numpy as np
from scipy.special import ndtri

from .errors import DomainError, SizeError
from .laguerre_core import DensePoly, LaguerreParams, monic_coeffs

__all__ = [
    "EntryLaw",
    "MCEstimate",
    "sample_matrix",
    "sample_batch",
    "char_poly_exact",
    "exact_rademacher_expectation",
    "mc_expected_charpoly",
    "esd_moment_mc",
    "trace_moments",
    "eigen_moments",
    "ENUMERATION_LIMIT",
]

ENUMERATION_LIMIT = 16
_WORDS_PER_BLOCK = 4
_BATCH = 4096


class EntryLaw(str, Enum):
    """Mean-zero, variance-one entry distributions."""

    GAUSSIAN = "gaussian"
    RADEMACHER = "rademacher"


def _law(law):
    return law if isinstance(law, EntryLaw) else EntryLaw(str(law).lower())


def _blocks_per_trial(p, n):
    return -(-p * n // _WORDS_PER_BLOCK)


def _raw_words(seed, first_trial, count, p, n):
    stride = _blocks_per_trial(p, n)
    bitgen = np.random.Philox(key=int(seed) % 2**64, counter=0)
    bitgen.advance(first_trial * stride)
    words = bitgen.random_raw(count * stride * _WORDS_PER_BLOCK)
    return words.reshape(count, stride * _WORDS_PER_BLOCK)[:, : p * n]


def _transform(words, law):
    if law is EntryLaw.RADEMACHER:
        return np.where(words >> np.uint64(63), 1.0, -1.0)
    u = ((words >> np.uint64(11)).astype(np.float64) + 0.5) * 2.0**-53
    return ndtri(u)


def sample_batch(p, n, law, seed, first_trial, count):
    """Matrices for trials ``first_trial .. first_trial + count - 1``, shape ``(count, p, n)``."""
    if p < 1 or n < 1:
        raise DomainError("p and n must be positive")
    law = _law(law)
    words = _raw_words(seed, first_trial, count, p, n)
    return _transform(words, law).reshape(count, p, n)


def sample_matrix(p, n, law, seed, trial_index):
    """The ``p x n`` matrix of one trial; identical to the matching slice of :func:`sample_batch`."""
    return sample_batch(p, n, law, seed, trial_index, 1)[0]


def char_poly_exact(matrix):
    """Monic ``det(xI - M)`` by the Samuelson-Berkowitz recursion.

    The recursion uses only ring operations, so integer input stays integer
    throughout and rational input needs no pivoting.
    """
    rows = [[x if isinstance(x, Fraction) else _exact(x) for x in row] for row in matrix]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise DomainError("matrix must be square")
    return DensePoly.from_descending(_berkowitz(rows))


def _exact(x):
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        return Fraction(float(x))
    return Fraction(x)


def _berkowitz(a):
    n = len(a)
    if n == 0:
        return [1]
    head, row = a[0][0], a[0][1:]
    col = [r[0] for r in a[1:]]
    sub = [r[1:] for r in a[1:]]
    inner = _berkowitz(sub)
    # first column of the Toeplitz factor: 1, -a11, -R C, -R A C, ..., -R A^(n-2) C
    t = [1, -head]
    v = col
    for _ in range(n - 1):
        t.append(-sum(x * y for x, y in zip(row, v)))
        v = [sum(x * y for x, y in zip(r, v)) for r in sub]
    return [
        sum(t[i - j] * inner[j] for j in range(max(0, i - n), min(i, n - 1) + 1))
        for i in range(n + 1)
    ]


def exact_rademacher_expectation(p, n):
    """Exact ``E det(xI - XX^T)`` over all ``2^(pn)`` sign matrices.

    Gram matrices are grouped before the characteristic polynomial is taken,
    since many sign patterns (e.g. column sign flips) share one.
    """
    if p < 1 or n < 1:
        raise DomainError("p and n must be positive")
    if p * n > ENUMERATION_LIMIT:
        raise SizeError(f"p*n={p * n} exceeds {ENUMERATION_LIMIT}; use mc_expected_charpoly")
    signs = np.array(list(product((-1, 1), repeat=p * n)), dtype=np.int64).reshape(-1, p, n)
    grams = np.einsum("tij,tkj->tik", signs, signs)
    uniq, counts = np.unique(grams.reshape(len(grams), -1), axis=0, return_counts=True)
    total = DensePoly()
    for g, cnt in zip(uniq, counts):
        total = total + char_poly_exact(g.reshape(p, p).tolist()) * int(cnt)
    return total / len(grams)


@dataclass(frozen=True)
class MCEstimate:
    """Monte Carlo estimate of ``E det(xI - XX^T)`` (coefficients in ascending degree)."""

    p: int
    n: int
    law: str
    trials: int
    seed: int
    coeff_means: tuple
    coeff_stderrs: tuple

    def reference(self):
        return monic_coeffs(LaguerreParams(self.p, self.n - self.p))

    def z_scores(self):
        ref = self.reference()
        out = []
        for i, (m, s) in enumerate(zip(self.coeff_means, self.coeff_stderrs)):
            diff = m - float(ref.coeff(i))
            out.append(0.0 if diff == 0 else (math.copysign(math.inf, diff) if s == 0 else diff / s))
        return out

    def within(self, n_stderr=4.0):
        return all(abs(z) <= n_stderr for z in self.z_scores())

    def to_json(self):
        ref = self.reference()
        return {
            "p": self.p,
            "n": self.n,
            "law": self.law,
            "trials": self.trials,
            "seed": self.seed,
            "coeff_means": list(self.coeff_means),
            "coeff_stderrs": list(self.coeff_stderrs),
            "reference_coeffs": [str(ref.coeff(i)) for i in range(self.p + 1)],
            "z_scores": self.z_scores(),
        }

    def dumps(self):
        return json.dumps(self.to_json(), indent=2)


def _charpoly_batch(a):
    # batched Berkowitz on (t, m, m); returns descending coefficients (t, m + 1).
    # Division free, so integer Gram matrices give exact integer coefficients.
    t, m, _ = a.shape
    if m == 0:
        return np.ones((t, 1))
    head, row, col, sub = a[:, 0, 0], a[:, 0, 1:], a[:, 1:, 0], a[:, 1:, 1:]
    inner = _charpoly_batch(sub)
    cols = [np.ones(t), -head]
    v = col
    for _ in range(m - 1):
        cols.append(-np.einsum("ti,ti->t", row, v))
        v = np.einsum("tij,tj->ti", sub, v)
    toeplitz = np.stack(cols, axis=1)
    out = np.zeros((t, m + 1))
    for i in range(m + 1):
        for j in range(max(0, i - m), min(i, m - 1) + 1):
            out[:, i] += toeplitz[:, i - j] * inner[:, j]
    return out


def _batches(trials):
    start = 0
    while start < trials:
        count = min(_BATCH, trials - start)
        yield start, count
        start += count


def mc_expected_charpoly(p, n, law, trials, seed):
    """Sample mean and standard error of each coefficient of ``det(xI - XX^T)``.

    Means and variances use exactly rounded sums over the trials, so the
    estimate does not depend on the internal batch size.
    """
    if not 1 <= p <= n:
        raise DomainError("need 1 <= p <= n")
    if trials < 100:
        raise DomainError("need at least 100 trials")
    law = _law(law)
    coeffs = np.empty((trials, p + 1))
    for start, count in _batches(trials):
        x = sample_batch(p, n, law, seed, start, count)
        gram = x @ x.transpose(0, 2, 1)
        coeffs[start:start + count] = _charpoly_batch(gram)[:, ::-1]
    means, errs = [], []
    for col in coeffs.T:
        m = math.fsum(col) / trials
        var = math.fsum((col - m) ** 2) / (trials - 1)
        means.append(m)
        errs.append(math.sqrt(var / trials))
    return MCEstimate(p, n, law.value, trials, int(seed), tuple(means), tuple(errs))


def eigen_moments(w, k_max):
    """Moments ``(1/p) sum lambda^k``, ``k = 1..k_max``, of symmetric matrices ``w`` (batched)."""
    lam = np.linalg.eigvalsh(w)
    return np.stack([np.mean(lam**k, axis=-1) for k in range(1, k_max + 1)], axis=-1)


def trace_moments(w, k_max):
    """Same moments as :func:`eigen_moments` from traces of matrix powers."""
    p = w.shape[-1]
    out = []
    power = np.broadcast_to(np.eye(p), w.shape).copy()
    for _ in range(k_max):
        power = power @ w
        out.append(np.trace(power, axis1=-2, axis2=-1) / p)
    return np.stack(out, axis=-1)


def esd_moment_mc(p, n, law, trials, k_max, seed, normalization="p"):
    """Mean empirical spectral moments of ``XX^T / p`` (or ``XX^T / n``).

    Returns a list of ``(k, mean_moment, stderr)`` for ``k = 1..k_max``.
    ``normalization`` may be ``"p"``, ``"n"`` or ``"both"``; with ``"both"`` a
    dict keyed by normalisation is returned.
    """
    if p < 1 or n < 1:
        raise DomainError("p and n must be positive")
    if trials < 2:
        raise DomainError("need at least 2 trials")
    if normalization not in ("p", "n", "both"):
        raise DomainError("normalization must be 'p', 'n' or 'both'")
    law = _law(law)
    raw = np.empty((trials, k_max))
    per_batch = max(1, _BATCH // (p * p))
    start = 0
    while start < trials:
        count = min(per_batch, trials - start)
        x = sample_batch(p, n, law, seed, start, count)
        raw[start:start + count] = eigen_moments(x @ x.transpose(0, 2, 1), k_max)
        start += count

    def summarize(scale):
        rows = []
        for k in range(1, k_max + 1):
            col = raw[:, k - 1] / scale**k
            m = math.fsum(col) / trials
            var = math.fsum((col - m) ** 2) / (trials - 1)
            rows.append((k, m, math.sqrt(var / trials)))
        return rows

    if normalization == "both":
        return {"p": summarize(float(p)), "n": summarize(float(n))}
    return summarize(float(p) if normalization == "p" else float(n))
