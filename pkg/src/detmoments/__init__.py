"""Exact moments of random matrix determinants and permanents.

Computes the second, fourth, and sixth power moments of det(M) for an n x n
matrix with i.i.d. mean-zero entries, exactly, by several independent routes
(closed sums, an inclusion-exclusion recursion, generating-function
extraction, and a convolution handling skewed entry laws), together with the
factorial asymptotic expansion of the sixth moment and brute-force
enumeration oracles that validate everything.
"""

__version__ = "0.1.0"

from .exact import MomentPoly, MomentSpec, format_rational, parse_rational
from .moments import (
    det_moment,
    fourth_moment,
    second_moment,
    sixth_moment,
)
from .oracle import FiniteDistribution

__all__ = [
    "MomentPoly",
    "MomentSpec",
    "FiniteDistribution",
    "format_rational",
    "parse_rational",
    "second_moment",
    "fourth_moment",
    "sixth_moment",
    "det_moment",
    "__version__",
]
