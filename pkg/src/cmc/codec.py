"""Splitting-node spines and the measure-class-preserving bitstring codec.

A splitting node of a measure is a string whose two child cylinders both have
positive mass.  Following the chain ``t_{k+1} = least splitting node extending
t_k + '0'`` yields the spine; the encoder rescales the two children at the
k-th spine node to an exact 2/3-1/3 split oriented by the k-th payload bit and
leaves all other conditional masses unchanged, so the zero sets (and hence the
measure class) of the base are preserved.  The decoder recomputes the spine
and reads the orientation back off the exact ratios.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import BudgetExceeded, NotInCodingDomain, ZeroMass
from .measures import MeasureCode, ONE, ZERO

DEFAULT_BUDGET = 65536

TWO_THIRDS = Fraction(2, 3)
ONE_THIRD = Fraction(1, 3)

_UNBOUNDED = float("inf")


def splitting_node(code, s, budget):
    """Shortlex-least ``t`` extending ``s`` whose children both have positive
    mass, searching extensions of length at most ``len(s) + budget``."""
    if code.mass(s) == 0:
        raise ZeroMass(f"cylinder {s!r} has zero mass")
    # Frontier of positive-mass extensions at the current length, in lex
    # order.  None of them split (else we returned), so each has at most one
    # positive child and the frontier never grows.
    frontier = [s]
    for _ in range(budget + 1):
        for t in frontier:
            if code.mass(t + "0") > 0 and code.mass(t + "1") > 0:
                return t
        frontier = [t + b for t in frontier for b in "01" if code.mass(t + b) > 0]
        if not frontier:
            break
    raise BudgetExceeded(
        f"no splitting node extending {s!r} within {budget} levels"
    )


class _SpineCache:
    """Lazily extended spine of one measure code.

    Keeps, besides the confirmed nodes, the state of the pending search for
    the next node so that length-capped searches can resume later.
    """

    def __init__(self, code):
        self.code = code
        self.nodes = []
        self.index = {}
        self._start = ""
        self._frontier = None  # pending-search frontier, lex order

    def _step(self, limit_len, budget):
        """Advance the pending search.  Returns 'found', 'over-limit' (no node
        with length <= limit_len remains, as far as searched; resumable), or
        'dead' (no positive continuation at all)."""
        code = self.code
        if self._frontier is None:
            self._frontier = [self._start]
        while True:
            if not self._frontier:
                return "dead"
            cur_len = len(self._frontier[0])
            if cur_len > limit_len:
                return "over-limit"
            if cur_len - len(self._start) > budget:
                raise BudgetExceeded(
                    f"no splitting node extending {self._start!r} "
                    f"within {budget} levels"
                )
            for t in self._frontier:
                if code.mass(t + "0") > 0 and code.mass(t + "1") > 0:
                    self.index[t] = len(self.nodes)
                    self.nodes.append(t)
                    self._start = t + "0"
                    self._frontier = None
                    return "found"
            self._frontier = [
                t + b for t in self._frontier for b in "01" if code.mass(t + b) > 0
            ]

    def ensure_count(self, count, budget):
        while len(self.nodes) < count:
            if self._step(_UNBOUNDED, budget) != "found":
                raise BudgetExceeded("spine ended: no further splitting node")

    def ensure_all_up_to_length(self, length, budget):
        """Materialize every spine node of length <= ``length``; decidable
        whenever each intermediate search settles within ``budget`` levels."""
        while True:
            if self.nodes and len(self.nodes[-1]) > length:
                return
            if self._step(length, budget) != "found":
                return

    def ensure_path_length(self, length, budget):
        """Extend until the last node has length >= ``length``."""
        while not self.nodes or len(self.nodes[-1]) < length:
            if self._step(_UNBOUNDED, budget) != "found":
                raise BudgetExceeded("spine ended: no further splitting node")

    def path(self, length):
        for t in self.nodes:
            if len(t) >= length:
                return t[:length]
        raise BudgetExceeded(f"spine not developed to depth {length}")


def _spine_cache(code):
    cache = getattr(code, "_spine", None)
    if cache is None:
        cache = _SpineCache(code)
        code._spine = cache
    return cache


@dataclass(frozen=True)
class SplittingSpine:
    """Nodes ``t_0 .. t_n`` of a measure's splitting spine."""

    nodes: tuple
    base: MeasureCode


def spine(code, n, budget=DEFAULT_BUDGET):
    """The first ``n+1`` spine nodes of ``code``.

    ``t_0`` is the least splitting node at all (the root, when the root
    splits); thereafter ``t_{k+1}`` extends ``t_k + '0'``.
    """
    cache = _spine_cache(code)
    cache.ensure_count(n + 1, budget)
    return SplittingSpine(tuple(cache.nodes[: n + 1]), code)


class CodedMeasure(MeasureCode):
    """The encoded measure: the base with payload bits stamped into its spine.

    At the k-th spine node of the base the child masses are exactly
    ``{2/3, 1/3}`` of the parent, child 0 getting 2/3 when payload bit k is 1;
    everywhere else conditional masses equal the base's.
    """

    def __init__(self, base, payload, budget=DEFAULT_BUDGET):
        super().__init__()
        if budget <= 0:
            raise ValueError("budget must be positive")
        self.base = base
        if isinstance(payload, str):
            payload = tuple(int(b) for b in payload)
        self.payload = payload
        self.budget = budget
        # declared payload bits, when finite (used by the serializer); a finite
        # payload stamps only its own spine nodes and leaves the rest alone
        self.payload_bits = tuple(payload) if hasattr(payload, "__len__") else None

    def _spine_index_of(self, s):
        """Index of ``s`` in the base's spine, or None.  Decides membership by
        materializing all base spine nodes of length <= len(s)."""
        cache = _spine_cache(self.base)
        cache.ensure_all_up_to_length(len(s), self.budget)
        return cache.index.get(s)

    def _mass_raw(self, s):
        if not s:
            return ONE
        parent, child = s[:-1], s[-1]
        gp = self.mass(parent)
        if gp == 0:
            return ZERO
        fp = self.base.mass(parent)
        k = self._spine_index_of(parent) if fp > 0 else None
        if k is not None:
            try:
                bit = self.payload[k]
            except IndexError:
                bit = None
            if bit is not None:
                two_thirds_side = "0" if bit == 1 else "1"
                return gp * (TWO_THIRDS if child == two_thirds_side else ONE_THIRD)
        fs = self.base.mass(s)
        if fs == 0 or fp == 0:
            return ZERO
        return gp / fp * fs

    def __repr__(self):
        return f"CodedMeasure({self.base!r}, {self.payload!r}, budget={self.budget})"


def encode(base, payload, budget=DEFAULT_BUDGET):
    """Stamp ``payload`` into ``base``'s spine; lazy, fails with
    BudgetExceeded on evaluation if the base stops splitting."""
    if base.mass("") != 1:
        raise ZeroMass("base is not normalized: f('') != 1")
    return CodedMeasure(base, payload, budget)


def _read_spine_bit(g, node):
    """Payload bit stamped at a spine node, or None if neither exact ratio
    pattern holds."""
    gm = g.mass(node)
    c0 = g.mass(node + "0")
    c1 = g.mass(node + "1")
    if 3 * c0 == 2 * gm and 3 * c1 == gm:
        return 1
    if 3 * c0 == gm and 3 * c1 == 2 * gm:
        return 0
    return None


def decode(g, k, budget=DEFAULT_BUDGET):
    """First ``k`` payload bits read off the spine of ``g``.

    Raises NotInCodingDomain at the first spine node where neither exact
    ratio pattern holds.
    """
    cache = _spine_cache(g)
    cache.ensure_count(k, budget)
    out = []
    for n in range(k):
        bit = _read_spine_bit(g, cache.nodes[n])
        if bit is None:
            raise NotInCodingDomain(n, cache.nodes[n])
        out.append(str(bit))
    return "".join(out)


def in_coding_domain(g, k, budget=DEFAULT_BUDGET):
    """True iff the first ``k`` spine ratio checks pass exactly; otherwise
    ``(False, n, t_n)`` with the first failing index and node."""
    cache = _spine_cache(g)
    cache.ensure_count(k, budget)
    for n in range(k):
        if _read_spine_bit(g, cache.nodes[n]) is None:
            return (False, n, cache.nodes[n])
    return True


def density(g, s):
    """Cylinder mass ratio ``g(s)/f(s)`` against the base (0 where the base
    vanishes)."""
    if not isinstance(g, CodedMeasure):
        raise TypeError("density is defined for encoded measures")
    fs = g.base.mass(s)
    if fs == 0:
        return ZERO
    return g.mass(s) / fs


@dataclass(frozen=True)
class Stabilized:
    theta: Fraction


class NotYetStable:
    """The prefix still lies on the base's spine path; the density ratio can
    change further down."""

    def __repr__(self):
        return "NotYetStable()"


NOT_YET_STABLE = NotYetStable()


def density_limit(g, prefix):
    """Stabilized density below ``prefix`` once it has branched off the base's
    spine path; NotYetStable while the prefix is an initial segment of it."""
    if not isinstance(g, CodedMeasure):
        raise TypeError("density_limit is defined for encoded measures")
    cache = _spine_cache(g.base)
    cache.ensure_path_length(len(prefix), g.budget)
    if cache.path(len(prefix)) == prefix:
        return NOT_YET_STABLE
    return Stabilized(density(g, prefix))


def offspine_decomposition(code, depth, budget=DEFAULT_BUDGET):
    """Strings of length <= depth whose parent is on the spine path but which
    leave it: the roots of the cylinders on which the encoder's density ratio
    is constant.  Together with the depth-``depth`` spine prefix they cover
    everything."""
    if depth == 0:
        return []
    cache = _spine_cache(code)
    cache.ensure_path_length(depth, budget)
    path = cache.path(depth)
    return [
        path[: j - 1] + ("1" if path[j - 1] == "0" else "0") for j in range(1, depth + 1)
    ]
