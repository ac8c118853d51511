"""Coordinate schedules for product measures on Cantor space.

A schedule assigns to each coordinate ``n`` the probability ``alpha_n`` of the
bit 0, with ``0 < alpha_n < 1``.  The parameterized family uses
``alpha_n = (1 + r_n)/4`` on coordinates where the parameter sequence is 1 and
``alpha_n = 1/4`` elsewhere, where ``r_n`` is the fixed rational truncation of
``1/sqrt(n+1)`` to ``2n+4`` binary digits.  The truncation error is at most
``2**-(2n+4)``, so it is summable and cannot affect which side of the
dichotomy a pair of schedules falls on.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt

from .errors import SemanticError


def inv_sqrt_trunc(n):
    """``1/sqrt(n+1)`` truncated to ``2n+4`` binary digits, as an exact rational."""
    p = 2 * n + 4
    # floor(2**p / sqrt(n+1)) == floor(sqrt(4**p * (n+1))) // (n+1)
    num = isqrt(4**p * (n + 1)) // (n + 1)
    return Fraction(num, 1 << p)


def _check_open_unit(value):
    value = Fraction(value)
    if not 0 < value < 1:
        raise SemanticError(f"schedule entry {value} outside (0, 1)")
    return value


class Schedule:
    def alpha(self, n):
        """Probability of bit 0 at coordinate ``n``."""
        raise NotImplementedError


class ConstantSchedule(Schedule):
    def __init__(self, value):
        self.value = _check_open_unit(value)

    def alpha(self, n):
        return self.value

    def __repr__(self):
        return f"ConstantSchedule({self.value})"


class ExplicitSchedule(Schedule):
    """Finitely many listed entries, then a tail rule.

    ``tail`` is either ``("const", value)`` or ``"cycle"`` (repeat the listed
    entries forever).
    """

    def __init__(self, values, tail):
        self.values = tuple(_check_open_unit(v) for v in values)
        if not self.values:
            raise SemanticError("explicit schedule needs at least one entry")
        if tail == "cycle":
            self.tail = "cycle"
        else:
            kind, value = tail
            if kind != "const":
                raise SemanticError(f"unknown tail rule {tail!r}")
            self.tail = ("const", _check_open_unit(value))

    def alpha(self, n):
        if n < len(self.values):
            return self.values[n]
        if self.tail == "cycle":
            return self.values[n % len(self.values)]
        return self.tail[1]

    def __repr__(self):
        return f"ExplicitSchedule({self.values}, {self.tail})"


class KSSchedule(Schedule):
    """The parameterized family: 1/4 where the parameter bit is 0, and
    ``(1 + r_n)/4`` where it is 1."""

    def __init__(self, x):
        self.x = x
        self._cache = {}

    def alpha(self, n):
        a = self._cache.get(n)
        if a is None:
            if self.x[n]:
                a = (1 + inv_sqrt_trunc(n)) / 4
            else:
                a = Fraction(1, 4)
            self._cache[n] = a
        return a

    def __repr__(self):
        return f"KSSchedule({self.x!r})"


def ks_schedule(x):
    """Schedule of the product measure parameterized by the bit sequence ``x``."""
    return KSSchedule(x)
