"""Numerical helpers: log-space accumulation and small combinatorial counts."""

from fractions import Fraction
from math import comb, log

import numpy as np


def catalan(m):
    'Catalan number C_m by the product formula'
    if m < 0:
        raise ValueError("catalan: negative index %i" % m)
    return comb(2 * m, m) // (m + 1)


def log_sum_exp(values):
    """
    Return ``log(sum(exp(v)))`` for a sequence of floats without overflow.

    An empty sequence sums to zero, whose logarithm is ``-inf``.
    """
    values = np.asarray(list(values), dtype=np.float64)
    if values.size == 0:
        return -np.inf
    return float(np.logaddexp.reduce(values))


def log_weighted_terms(terms, point, scale):
    """
    Log-space values ``log c + scale * <a, point>`` of the monomials
    ``c * X^a`` given as ``(exponent, coefficient)`` pairs.
    """
    x = np.array([float(v) for v in point], dtype=np.float64)
    out = []
    for exp, coef in terms:
        if coef <= 0:
            raise ValueError("log_weighted_terms: coefficient %i is not "
                             "positive" % coef)
        e = np.array(exp, dtype=np.float64)
        out.append(log(coef) + scale * float(np.dot(e, x)))
    return out


def lcm_list(values):
    result = 1
    for v in values:
        result = abs(result * v) // np.gcd(result, v)
    return int(result)


def as_fraction(value):
    """Convert ints, Fractions and decimal/ratio strings to ``Fraction``."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, np.integer)):
        return Fraction(int(value))
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError("as_fraction: unsupported value %r" % (value,))
