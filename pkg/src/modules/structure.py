"""Group Structure

Quotients, derived and upper central series, Sylow subgroup counts and a
cheap supply of normal subgroups for the claim checks.
"""

from dataclasses import dataclass, field
from typing import List, Optional, Tuple
import logging

import numpy as np
from sympy import isprime, multiplicity, primefactors

from .errors import InvariantViolation, SpecError
from .group import ElementSet, FiniteGroup

logger = logging.getLogger(__name__)


@dataclass
class Quotient:
    """G/N with the projection sending each element to its coset index."""

    group: FiniteGroup
    projection: np.ndarray
    representatives: List[int]


@dataclass
class DerivedSeries:
    terms: List[ElementSet]
    solvable: bool
    derived_length: Optional[int]

    @property
    def orders(self) -> List[int]:
        return [len(t) for t in self.terms]


@dataclass
class CentralSeries:
    terms: List[ElementSet]
    nilpotent: bool

    @property
    def orders(self) -> List[int]:
        return [len(t) for t in self.terms]


@dataclass
class SylowData:
    """Sylow p-subgroups of a group: count, one representative, intersections."""

    p: int
    count: int
    subgroup: ElementSet
    conjugates: List[ElementSet] = field(repr=False)
    trivial_intersection: bool = True


def quotient(group: FiniteGroup, normal: ElementSet) -> Quotient:
    """Build G/N on cosets indexed by their least element.

    Args:
        group: Ambient group
        normal: Normal subgroup N

    Returns:
        Quotient with a verified homomorphic projection

    Raises:
        NotSubgroupError: N is not closed
        NotNormalError: N is not normal (carries the conjugation witness)
        InvariantViolation: Projection fails to be a homomorphism
    """
    group.require_normal(normal)

    k = group.order
    projection = np.full(k, -1, dtype=np.int64)
    reps: List[int] = []
    members = normal.as_array()
    for x in range(k):
        if projection[x] < 0:
            projection[group.mul[x, members]] = len(reps)
            reps.append(x)

    rep_arr = np.asarray(reps, dtype=np.int64)
    table = projection[group.mul[np.ix_(rep_arr, rep_arr)]]
    if not np.array_equal(projection[group.mul], table[projection[:, None], projection[None, :]]):
        raise InvariantViolation(f"Projection of {group.origin} onto cosets is not a homomorphism")

    labels = ["e"] + [f"{group.labels[r]}N" for r in reps[1:]]
    q = FiniteGroup(
        table,
        labels=labels,
        origin=f"{group.origin}/{len(normal)}",
        associativity="none",
    )
    logger.debug(f"Quotient {q.origin} of order {q.order}")
    return Quotient(group=q, projection=projection, representatives=reps)


def subgroup_table(group: FiniteGroup, sub: ElementSet) -> FiniteGroup:
    """H as a group in its own right, elements renumbered in sorted order.

    Raises:
        NotSubgroupError: sub is not closed or misses the identity
    """
    group.require_subgroup(sub)
    members = sub.as_array()
    position = np.full(group.order, -1, dtype=np.int64)
    position[members] = np.arange(len(members))
    table = position[group.mul[np.ix_(members, members)]]
    return FiniteGroup(
        table,
        labels=[group.labels[x] for x in members],
        origin=f"{group.origin}>{len(sub)}",
        associativity="none",
    )


def derived_subgroup(group: FiniteGroup, sub: Optional[ElementSet] = None) -> ElementSet:
    """Subgroup generated by all commutators of elements of sub (default G)."""
    xs = np.arange(group.order) if sub is None else sub.as_array()
    commutators = np.unique(group.commutator_table[np.ix_(xs, xs)])
    return group.subgroup_generated(commutators.tolist())


def derived_series(group: FiniteGroup) -> DerivedSeries:
    """G >= G' >= G'' >= ... until it stabilises.

    Raises:
        InvariantViolation: A term is not normal in its predecessor
    """
    terms = [group.element_set(range(group.order))]
    while True:
        nxt = derived_subgroup(group, terms[-1])
        if len(nxt) == len(terms[-1]):
            break
        if group.normality_witness(nxt, ambient=terms[-1]) is not None:
            raise InvariantViolation(f"Derived term of order {len(nxt)} is not normal")
        terms.append(nxt)

    solvable = len(terms[-1]) == 1
    length = len(terms) - 1 if solvable else None
    logger.debug(f"Derived series of {group.origin}: {[len(t) for t in terms]}")
    return DerivedSeries(terms=terms, solvable=solvable, derived_length=length)


def upper_central_series(group: FiniteGroup) -> CentralSeries:
    """Z_0 = 1, Z_{i+1} = {x : [x, g] in Z_i for all g}, until it stabilises."""
    terms = [group.element_set([0])]
    comm = group.commutator_table
    while True:
        nxt = group.element_set(np.flatnonzero(terms[-1].mask()[comm].all(axis=1)))
        if len(nxt) == len(terms[-1]):
            break
        terms.append(nxt)
    return CentralSeries(terms=terms, nilpotent=len(terms[-1]) == group.order)


def is_nilpotent(group: FiniteGroup) -> Tuple[bool, CentralSeries]:
    """Nilpotency via the upper central series.

    Returns:
        (nilpotent flag, upper central series)

    Raises:
        InvariantViolation: Nilpotent but the derived series does not reach 1
    """
    series = upper_central_series(group)
    if series.nilpotent and not derived_series(group).solvable:
        raise InvariantViolation(f"{group.origin} is nilpotent but not solvable")
    return series.nilpotent, series


def prime_divisors(order: int) -> List[int]:
    return list(primefactors(order))


def _sylow_subgroup(group: FiniteGroup, p: int, target: int) -> ElementSet:
    # every maximal p-subgroup is Sylow, so one greedy pass reaches the target
    p_elements = [x for x in range(group.order) if _is_p_power(int(group.element_orders[x]), p)]
    current = group.element_set([0])
    for x in p_elements:
        if len(current) == target:
            break
        if x in current:
            continue
        candidate = group.subgroup_generated(list(current) + [x])
        if _is_p_power(len(candidate), p):
            current = candidate
    if len(current) != target:
        raise InvariantViolation(f"Sylow {p}-subgroup search stopped at order {len(current)}")
    return current


def _is_p_power(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


def sylow_count(group: FiniteGroup, p: int) -> SylowData:
    """Count Sylow p-subgroups and test whether they intersect trivially.

    Args:
        group: Group to analyse
        p: Prime dividing |G|

    Returns:
        SylowData with count v_p and the trivial-intersection flag

    Raises:
        SpecError: p is not a prime divisor of |G|
        InvariantViolation: v_p is not 1 mod p
    """
    if not isprime(p) or group.order % p:
        raise SpecError(f"{p} is not a prime divisor of {group.order}")

    target = p ** int(multiplicity(p, group.order))
    sylow = _sylow_subgroup(group, p, target)
    members = sylow.as_array()

    conjugates = {}
    for g in range(group.order):
        conj = group.mul[group.mul[g, members], group.inv[g]]
        key = tuple(sorted(int(v) for v in conj))
        conjugates.setdefault(key, group.element_set(key))
    subgroups = [conjugates[key] for key in sorted(conjugates)]
    count = len(subgroups)

    if count % p != 1 % p:
        raise InvariantViolation(f"v_{p}({group.origin}) = {count} is not 1 mod {p}")

    trivial = True
    masks = [s.mask() for s in subgroups]
    for i in range(count):
        for j in range(i + 1, count):
            if (masks[i] & masks[j]).sum() > 1:
                trivial = False
                break
        if not trivial:
            break

    logger.debug(f"v_{p}({group.origin}) = {count}, trivial intersection {trivial}")
    return SylowData(p=p, count=count, subgroup=sylow, conjugates=subgroups, trivial_intersection=trivial)


def normal_subgroups_for_checks(group: FiniteGroup) -> List[ElementSet]:
    """Proper nontrivial normal subgroups that are cheap to find.

    Collects the center, upper central and derived series terms and normal
    Sylow subgroups, keeps the distinct proper nontrivial ones and verifies
    each is normal.

    Returns:
        Subgroups ordered by (size, members)
    """
    candidates = [group.center()]
    candidates.extend(upper_central_series(group).terms)
    candidates.extend(derived_series(group).terms)
    for p in prime_divisors(group.order):
        data = sylow_count(group, p)
        if data.count == 1:
            candidates.append(data.subgroup)

    found = {}
    for sub in candidates:
        if 1 < len(sub) < group.order and sub.members not in found:
            if group.normality_witness(sub) is not None:
                raise InvariantViolation(f"Candidate normal subgroup of order {len(sub)} is not normal")
            found[sub.members] = sub
    return sorted(found.values(), key=lambda s: (len(s), s.members))
