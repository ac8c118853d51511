"""Outward-rounded dyadic enclosures for the few irrational quantities we
ever need (square roots), built on integer square roots."""

from fractions import Fraction
from math import isqrt


def sqrt_bounds(q, bits):
    """Dyadic ``(lo, hi)`` with ``lo <= sqrt(q) <= hi`` and ``hi - lo <=
    2**-bits`` (exact dyadic square roots give a degenerate interval)."""
    q = Fraction(q)
    if q < 0:
        raise ValueError("sqrt of a negative rational")
    a, b = q.numerator, q.denominator
    # floor(2**bits * sqrt(a/b)) == floor(floor(sqrt(a*b*4**bits)) / b)
    d = isqrt((a * b) << (2 * bits)) // b
    lo = Fraction(d, 1 << bits)
    if lo * lo == q:
        return lo, lo
    return lo, lo + Fraction(1, 1 << bits)
