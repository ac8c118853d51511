"""Finite-depth orthogonality evidence, moduli, and family building.

The basic quantity is the depth-d gap: over the level-d cells, the total mass
by which one measure exceeds the other.  It equals the depth-d total
variation distance, is nondecreasing in depth, and tends to 1 exactly for
orthogonal pairs, so certificates found at a finite depth are conclusive
while absence of one never is.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import BudgetExceeded
from .kakutani import perfect_family
from .measures import CylinderFamily, ZERO, product_code
from .productgap import (
    MIM_MAX_DEPTH,
    binomial_masses,
    mim_masses,
    tv_upper_bound,
)
from .schedules import ConstantSchedule, ks_schedule

_ENUM_DEPTH = 16  # exhaustive level enumeration up to 2**16 cells
_GENERIC_DEPTH = 22  # recursive sweep limit without product structure
_CELL_LIMIT = 1 << 18  # largest certificate cell set materialized
_PROBE_DEPTH = 12  # reported gap depth when a sweep is pre-filtered away


def _probs(code, d):
    sched = code.product_schedule()
    if sched is None:
        return None
    return [sched.alpha(n) for n in range(d)]


def _masses_above_rec(mu, nu, s, rem):
    """(mu, nu) mass of the depth-``rem`` cells below ``s`` where nu > mu."""
    v = nu.mass(s)
    if v == 0:
        return ZERO, ZERO
    m = mu.mass(s)
    if m == 0:
        return ZERO, v
    if rem == 0:
        return (m, v) if v > m else (ZERO, ZERO)
    m0, v0 = _masses_above_rec(mu, nu, s + "0", rem - 1)
    m1, v1 = _masses_above_rec(mu, nu, s + "1", rem - 1)
    return m0 + m1, v0 + v1


def _masses_above(mu, nu, d):
    """Exact (mu(A), nu(A)) for the level-d cell set A = {nu > mu}."""
    if d == 0:
        return ZERO, ZERO
    sa = mu.product_schedule()
    sb = nu.product_schedule()
    if sa is not None and sb is not None:
        if isinstance(sa, ConstantSchedule) and isinstance(sb, ConstantSchedule):
            return binomial_masses(sa.value, sb.value, d)
        if d > _ENUM_DEPTH:
            if d > MIM_MAX_DEPTH:
                raise BudgetExceeded(
                    f"depth {d} beyond the factorized-sweep limit {MIM_MAX_DEPTH}"
                )
            return mim_masses(_probs(mu, d), _probs(nu, d), d)
    if d > _GENERIC_DEPTH:
        raise BudgetExceeded(
            f"depth {d} needs product structure on both codes"
        )
    return _masses_above_rec(mu, nu, "", d)


def gap(mu, nu, d):
    """Depth-d total-variation gap: sum over level-d cells of
    ``max(nu - mu, 0)``; symmetric and nondecreasing in d."""
    mu_a, nu_a = _masses_above(mu, nu, d)
    return nu_a - mu_a


@dataclass(frozen=True)
class OrthoCertificate:
    """Level-``depth`` cell family with tiny mu-mass and near-full nu-mass;
    re-checkable with ``measure_of_family``."""

    epsilon: Fraction
    depth: int
    cells: CylinderFamily
    mu_mass: Fraction
    nu_mass: Fraction


@dataclass(frozen=True)
class Inconclusive:
    best_gap: Fraction = None
    at_depth: int = None
    detail: str = ""


def _collect_cells(mu, nu, s, rem, out):
    if nu.mass(s) == 0:
        return
    if rem == 0:
        if nu.mass(s) > mu.mass(s):
            out.append(s)
        return
    _collect_cells(mu, nu, s + "0", rem - 1, out)
    _collect_cells(mu, nu, s + "1", rem - 1, out)


def ortho_certificate(mu, nu, epsilon, max_depth):
    """Scan depths 1..max_depth for a certificate that the pair is orthogonal
    to tolerance ``epsilon``: cells where nu dominates, with mu-mass < epsilon
    and nu-mass > 1 - epsilon.

    For a pair of product measures a Bhattacharyya-affinity bound is checked
    first: when it already caps every depth's gap below ``1 - 2 epsilon`` no
    certificate can exist in range and the sweep is skipped.
    """
    epsilon = Fraction(epsilon)
    if not 0 < epsilon < Fraction(1, 2):
        raise ValueError("epsilon must lie in (0, 1/2)")
    pa = _probs(mu, max_depth)
    pb = _probs(nu, max_depth)
    if pa is not None and pb is not None and max_depth > _ENUM_DEPTH:
        bound = tv_upper_bound(pa, pb, max_depth)
        if bound <= 1 - 2 * epsilon:
            probe = min(max_depth, _PROBE_DEPTH)
            mu_a, nu_a = _masses_above(mu, nu, probe)
            return Inconclusive(nu_a - mu_a, probe, "affinity bound excludes a certificate")
    best = ZERO
    best_depth = 0
    for d in range(1, max_depth + 1):
        mu_a, nu_a = _masses_above(mu, nu, d)
        if nu_a - mu_a >= best:
            best, best_depth = nu_a - mu_a, d
        if mu_a < epsilon and nu_a > 1 - epsilon:
            if 1 << d > _CELL_LIMIT:
                raise BudgetExceeded(
                    f"certificate exists at depth {d} but its cell family "
                    f"is too large to materialize"
                )
            cells = []
            _collect_cells(mu, nu, "", d, cells)
            return OrthoCertificate(epsilon, d, CylinderFamily(cells), mu_a, nu_a)
    return Inconclusive(best, best_depth)


@dataclass(frozen=True)
class Modulus:
    """Least scanned level at which every cylinder has mass < epsilon."""

    n: int


@dataclass(frozen=True)
class AtomWitness:
    """A branch holding mass > epsilon all the way to the scan horizon."""

    prefix: str
    epsilon: Fraction
    mass: Fraction


def continuity_modulus(mu, epsilon, max_depth):
    """Non-atomicity evidence: the first level where all cylinder masses drop
    below epsilon, or a surviving heavy branch at the horizon.

    Masses only shrink along branches, so it suffices to track the frontier
    of cells with mass >= epsilon (there are at most 1/epsilon of them)."""
    epsilon = Fraction(epsilon)
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    frontier = [""] if mu.mass("") >= epsilon else []
    for n in range(max_depth + 1):
        if not frontier:
            return Modulus(n)
        if n == max_depth:
            break
        frontier = [s + b for s in frontier for b in "01" if mu.mass(s + b) >= epsilon]
    for s in frontier:
        if mu.mass(s) > epsilon:
            return AtomWitness(s, epsilon, mu.mass(s))
    return Inconclusive(detail="mass exactly epsilon at the horizon")


@dataclass(frozen=True)
class RefutationWitness:
    """Stage-wise refutation of absolute continuity: families of tiny nu-mass
    but mu-mass bounded below."""

    epsilon: Fraction
    stages: tuple  # of (delta, CylinderFamily)


def _positive_cells(mu, s, rem, out, limit):
    if mu.mass(s) == 0:
        return True
    if rem == 0:
        out.append(s)
        return len(out) <= limit
    return _positive_cells(mu, s + "0", rem - 1, out, limit) and _positive_cells(
        mu, s + "1", rem - 1, out, limit
    )


def refute_abs_continuity(mu, nu, epsilon, stages, max_depth):
    """For each dyadic budget ``delta_j = 2**-j`` greedily pack depth-d cells
    of maximal mu-mass under a strict nu-mass budget; a stage succeeds when
    the packed mu-mass reaches epsilon."""
    epsilon = Fraction(epsilon)
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    found = []
    for j in range(1, stages + 1):
        delta = Fraction(1, 1 << j)
        stage = None
        for d in range(1, max_depth + 1):
            cells = []
            if not _positive_cells(mu, "", d, cells, _CELL_LIMIT):
                break  # too many positive cells to sweep deeper
            cells.sort(
                key=lambda s: (
                    (1, Fraction(0)) if nu.mass(s) == 0 else (2, -mu.mass(s) / nu.mass(s))
                )
            )
            taken = []
            nu_total = ZERO
            mu_total = ZERO
            for s in cells:
                v = nu.mass(s)
                if nu_total + v < delta:
                    taken.append(s)
                    nu_total += v
                    mu_total += mu.mass(s)
                    if mu_total >= epsilon:
                        break
            if mu_total >= epsilon:
                stage = (delta, CylinderFamily(taken))
                break
        if stage is None:
            return Inconclusive(detail=f"stage delta=2**-{j} failed within depth {max_depth}")
        found.append(stage)
    return RefutationWitness(epsilon, tuple(found))


@dataclass(frozen=True)
class Failure:
    """No candidate was orthogonal to the whole family; best gap seen per
    rejected candidate."""

    best_gaps: tuple  # of (candidate, best_gap, at_depth)


@dataclass(frozen=True)
class Extension:
    code: object
    certificates: tuple
    candidate_index: int


def extend_family(family, candidates, epsilon, max_depth, recheck=True):
    """First product-measure candidate carrying an orthogonality certificate
    against every family member, with all certificates."""
    if recheck:
        for i in range(len(family)):
            for j in range(i + 1, len(family)):
                res = ortho_certificate(family[i], family[j], epsilon, max_depth)
                if not isinstance(res, OrthoCertificate):
                    raise ValueError(
                        f"family members {i} and {j} are not certified "
                        f"orthogonal at tolerance {epsilon}"
                    )
    best_gaps = []
    for idx, x in enumerate(candidates):
        cand = product_code(ks_schedule(x))
        certs = []
        for member in family:
            res = ortho_certificate(member, cand, epsilon, max_depth)
            if isinstance(res, OrthoCertificate):
                certs.append(res)
            else:
                best_gaps.append((x, res.best_gap, res.at_depth))
                break
        else:
            return Extension(cand, tuple(certs), idx)
    return Failure(tuple(best_gaps))


@dataclass(frozen=True)
class FamilyBuildResult:
    measures: tuple
    certificates: tuple  # OrthoCertificate per (earlier member, new member) pair
    failure: object  # Failure when the build stopped early, else None


def build_family(count, epsilon, max_depth, candidates=None):
    """Iterate extend_family from the empty family, consuming candidates."""
    if candidates is None:
        candidates = perfect_family(max(2 * count, 16))
    pool = list(candidates)
    measures = []
    certificates = []
    failure = None
    while len(measures) < count:
        result = extend_family(measures, pool, epsilon, max_depth, recheck=False)
        if isinstance(result, Failure):
            failure = result
            break
        measures.append(result.code)
        certificates.extend(result.certificates)
        del pool[result.candidate_index]
    return FamilyBuildResult(tuple(measures), tuple(certificates), failure)
