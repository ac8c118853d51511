"""Measure codes: exact cylinder evaluation on Cantor space.

A measure code is a map ``f`` from finite binary strings to ``[0,1]`` with
``f('') == 1`` and ``f(s) == f(s+'0') + f(s+'1')``; it determines a unique
Borel probability measure with ``mu(N_s) == f(s)``.  All values are exact
``Fraction``s.  Codes are immutable after construction; cylinder values are
memoized per instance, which never changes results.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from . import bits
from .bits import shortlex_string, check_bitstring
from .errors import SemanticError
from .schedules import ConstantSchedule, Schedule

ZERO = Fraction(0)
ONE = Fraction(1)
HALF = Fraction(1, 2)


def _check_unit(value, what="value"):
    value = Fraction(value)
    if not 0 <= value <= 1:
        raise SemanticError(f"{what} {value} outside [0, 1]")
    return value


class MeasureCode:
    """Base class; subclasses implement ``_mass_raw``."""

    def __init__(self):
        self._memo = {}

    def mass(self, s):
        v = self._memo.get(s)
        if v is None:
            check_bitstring(s)
            v = self._mass_raw(s)
            self._memo[s] = v
        return v

    def _mass_raw(self, s):
        raise NotImplementedError

    def product_schedule(self):
        """The coordinate schedule when this code is (extensionally) a product
        measure by construction, else None.  Lets deep total-variation sweeps
        use the factorized fast path."""
        return None


class Uniform(MeasureCode):
    """The fair-coin measure: every length-n cylinder has mass 2**-n."""

    def _mass_raw(self, s):
        return Fraction(1, 1 << len(s))

    def product_schedule(self):
        return ConstantSchedule(HALF)

    def __repr__(self):
        return "Uniform()"


class Dirac(MeasureCode):
    """Point mass on an infinite branch."""

    def __init__(self, branch):
        super().__init__()
        if isinstance(branch, str):
            branch = bits.from_bits(branch)
        self.branch = branch

    def _mass_raw(self, s):
        for k, c in enumerate(s):
            if int(c) != self.branch[k]:
                return ZERO
        return ONE

    def __repr__(self):
        return f"Dirac({self.branch!r})"


class FiniteSupport(MeasureCode):
    """Finitely many point masses; each leaf string carries its weight on the
    branch obtained by extending the leaf with zeros."""

    def __init__(self, pairs):
        super().__init__()
        pairs = [(check_bitstring(leaf), _check_unit(w, "weight")) for leaf, w in pairs]
        if sum((w for _, w in pairs), ZERO) != 1:
            raise SemanticError(
                f"finite-support weights sum to {sum((w for _, w in pairs), ZERO)}, not 1"
            )
        self.pairs = tuple(sorted(pairs, key=lambda p: bits.shortlex_key(p[0])))

    def _mass_raw(self, s):
        total = ZERO
        for leaf, w in self.pairs:
            head, tail = s[: len(leaf)], s[len(leaf) :]
            if leaf.startswith(head) and tail.strip("0") == "":
                total += w
        return total

    def __repr__(self):
        return f"FiniteSupport({list(self.pairs)})"


class Convex(MeasureCode):
    """Convex combination of measure codes."""

    def __init__(self, terms):
        super().__init__()
        terms = [(_check_unit(w, "weight"), child) for w, child in terms]
        if sum((w for w, _ in terms), ZERO) != 1:
            raise SemanticError(
                f"convex weights sum to {sum((w for w, _ in terms), ZERO)}, not 1"
            )
        self.terms = tuple(terms)

    def _mass_raw(self, s):
        return sum((w * child.mass(s) for w, child in self.terms), ZERO)

    def __repr__(self):
        return f"Convex({list(self.terms)})"


class ProductCode(MeasureCode):
    """Product measure: independent coordinates with bit-0 probabilities given
    by a schedule."""

    def __init__(self, schedule):
        super().__init__()
        if not isinstance(schedule, Schedule):
            raise TypeError(f"not a schedule: {schedule!r}")
        self.schedule = schedule

    def _mass_raw(self, s):
        if not s:
            return ONE
        a = self.schedule.alpha(len(s) - 1)
        return self.mass(s[:-1]) * (a if s[-1] == "0" else 1 - a)

    def product_schedule(self):
        return self.schedule

    def __repr__(self):
        return f"ProductCode({self.schedule!r})"


def product_code(schedule):
    """Measure code of the product measure with the given schedule."""
    return ProductCode(schedule)


class TableCode(MeasureCode):
    """Explicit cylinder table down to a stored depth; below it, mass splits
    uniformly.  Within the table, a missing entry is derived from its parent
    and sibling where possible (otherwise the parent splits evenly).  The
    table itself is trusted; ``validate_additivity`` is the checker."""

    def __init__(self, depth, entries):
        super().__init__()
        if depth < 0:
            raise SemanticError("table depth must be a natural number")
        self.depth = depth
        self.entries = {}
        for key, value in entries.items():
            check_bitstring(key)
            if len(key) > depth:
                raise SemanticError(f"table entry {key!r} deeper than {depth}")
            self.entries[key] = _check_unit(value, f"table entry {key!r}")

    def _mass_raw(self, s):
        if len(s) > self.depth:
            return self.mass(s[: self.depth]) / (1 << (len(s) - self.depth))
        if s in self.entries:
            return self.entries[s]
        if not s:
            return ONE
        parent = self.mass(s[:-1])
        sib = bits.sibling(s)
        if sib in self.entries:
            return parent - self.entries[sib]
        return parent / 2

    def __repr__(self):
        return f"TableCode({self.depth}, {self.entries})"


# ---------------------------------------------------------------------------
# Operations


def eval_cylinder(code, s):
    """``mu(N_s)`` as an exact rational."""
    return code.mass(s)


@dataclass(frozen=True)
class Violation:
    """First additivity (or normalization) failure, in shortlex order.

    For a normalization failure ``s`` is the empty string with ``lhs`` the
    evaluated root mass and ``rhs`` 1; for an additivity failure ``lhs`` is the
    parent mass and ``rhs`` the sum of the children.
    """

    s: str
    lhs: Fraction
    rhs: Fraction


def validate_additivity(code, depth):
    """Check ``f('') == 1`` and additivity at every string of length < depth.

    Returns ``"ok"`` or the first :class:`Violation` in shortlex order.
    """
    root = code.mass("")
    if root != 1:
        return Violation("", root, ONE)
    for n in range(depth):
        for s in bits.all_strings_of_length(n):
            lhs = code.mass(s)
            rhs = code.mass(s + "0") + code.mass(s + "1")
            if lhs != rhs:
                return Violation(s, lhs, rhs)
    return "ok"


@dataclass(frozen=True)
class CylinderFamily:
    """A finite union of cylinders, given by any list of index strings."""

    strings: tuple

    def __init__(self, strings):
        object.__setattr__(self, "strings", tuple(check_bitstring(s) for s in strings))

    def canonical(self):
        """Shortlex-sorted antichain with the same union: duplicates and
        strings nested inside shorter members are dropped."""
        keep = []
        for s in sorted(set(self.strings), key=bits.shortlex_key):
            if not any(s.startswith(t) for t in keep):
                keep.append(s)
        return tuple(keep)

    def __iter__(self):
        return iter(self.strings)

    def __len__(self):
        return len(self.strings)


def measure_of_family(code, family):
    """Exact mass of a finite union of cylinders."""
    if not isinstance(family, CylinderFamily):
        family = CylinderFamily(family)
    return sum((code.mass(s) for s in family.canonical()), ZERO)


def enumerate_strings(n):
    """Shortlex enumeration of all finite binary strings."""
    return shortlex_string(n)


def metric_bracket(f, g, N):
    """Enclosure of the code metric ``d(f,g) = sum 2**-(n+1) |f(s_n)-g(s_n)|``.

    Returns ``(lo, hi)`` with ``lo`` the exact partial sum over the first ``N``
    strings and ``hi = lo + 2**-N`` (the tail is at most the remaining
    geometric mass).
    """
    lo = ZERO
    for n in range(N):
        s = shortlex_string(n)
        lo += Fraction(1, 1 << (n + 1)) * abs(f.mass(s) - g.mass(s))
    return lo, lo + Fraction(1, 1 << N)


# ---------------------------------------------------------------------------
# The dense family of finitely supported rational codes


def _compositions(total, parts):
    """All nonnegative integer vectors of the given length summing to
    ``total``, in ascending lexicographic order."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _dense_units():
    """Finitely supported rational distributions, diagonally by
    (level, common denominator), numerator vectors in lexicographic order."""
    for diag in itertools.count(1):
        for level in range(diag):
            denom = diag - level
            leaves = bits.all_strings_of_length(level)
            for numerators in _compositions(denom, len(leaves)):
                yield [
                    (leaf, Fraction(c, denom))
                    for leaf, c in zip(leaves, numerators)
                    if c
                ]


_dense_cache = []
_dense_iter = _dense_units()


def enumerate_dense(i):
    """The ``i``-th member of the fixed countable dense family of codes.

    Every member is finitely supported: a rational distribution on some level
    ``2**n``, each leaf's weight carried by its all-zeros extension.
    """
    if i < 0:
        raise ValueError("index must be a natural number")
    while len(_dense_cache) <= i:
        _dense_cache.append(FiniteSupport(next(_dense_iter)))
    return _dense_cache[i]
