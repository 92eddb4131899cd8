"""Power sums of Laguerre roots and the Marchenko-Pastur law.

Submodules
----------
laguerre_core      exact monic, classical and conjugate Laguerre polynomials
power_sums         Newton identities, A(k, l) recursion, leading-term certificate
lattice_paths      legal path enumeration and Narayana numbers
marchenko_pastur   limit laws, moments, generating function, fixed points
spectral           numerical roots, normalised moments, convergence checks
random_matrix      XX^T sampling, expected characteristic polynomial, ESD moments
cli                command-line front end (``laguerre-mp``)
"""

from .errors import AccuracyError, CertificationError, DomainError, InvalidDegreeError, \
    SizeError
from .laguerre_core import DensePoly, LaguerreParams, monic_coeffs, standard_coeffs
from .lattice_paths import narayana
from .marchenko_pastur import moment, moment_tilde, mp_law
from .power_sums import BivariatePoly, certify_theorem2, newton_power_sums, symbolic_power_sum
from .spectral import Spectrum, roots

__version__ = "0.1.0"

__all__ = [
    "AccuracyError",
    "BivariatePoly",
    "CertificationError",
    "DensePoly",
    "DomainError",
    "InvalidDegreeError",
    "LaguerreParams",
    "SizeError",
    "Spectrum",
    "certify_theorem2",
    "moment",
    "moment_tilde",
    "monic_coeffs",
    "mp_law",
    "narayana",
    "newton_power_sums",
    "roots",
    "standard_coeffs",
    "symbolic_power_sum",
]
