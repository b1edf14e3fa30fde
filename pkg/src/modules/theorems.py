"""Structural Claim Checks

Each check instantiates one general statement about T(m,n)-groups on a
concrete group, using the group's computed spectrum, clique number and
structure. A check SKIPs when the group does not meet its hypotheses, FAILs
with the offending values when the statement breaks, and reports UNKNOWN when
a search it depends on ran out of budget.

Statements quantified over all (m, n) are evaluated at the boundary of the
spectrum: T(m,n) holds exactly for n > N(m), so the smallest member n is
N(m) + 1 and every statement below is monotone in n.
"""

from dataclasses import dataclass
from enum import Enum
from math import ceil
from typing import Callable, List, Optional, Tuple
import logging

from .clique import clique_within
from .invariants import GroupInvariants
from .obstruction import DecisionStatus, ObstructionCert, verify_certificate

logger = logging.getLogger(__name__)


class CheckStatus(Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    SKIP = "SKIP"
    DISPUTED_AGREE = "DISPUTED-AGREE"
    DISPUTED_DISAGREE = "DISPUTED-DISAGREE"
    UNKNOWN = "UNKNOWN"


@dataclass(frozen=True)
class CheckOutcome:
    check_id: str
    group: str
    status: CheckStatus
    details: str

    def to_dict(self) -> dict:
        return {
            "check": self.check_id,
            "group": self.group,
            "status": self.status.value,
            "details": self.details,
        }


Result = Tuple[CheckStatus, str]


class _Undecided(Exception):
    """Raised inside a check when a needed N(m) is unknown."""


def _n(inv: GroupInvariants, m: int) -> int:
    value = inv.N(m)
    if value is None:
        raise _Undecided(f"N({m}) undecided")
    return value


def _boundary(inv: GroupInvariants) -> List[Tuple[int, int]]:
    """(m, N(m)) for m = 2 .. w + 1."""
    return [(m, _n(inv, m)) for m in range(2, inv.w + 2)]


def _least_noncommuting_pair(inv: GroupInvariants) -> Tuple[int, int]:
    g = inv.group
    for x in range(g.order):
        for y in range(x + 1, g.order):
            if not g.commutes(x, y):
                return x, y
    raise ValueError(f"{g.origin} is abelian")


def _witnesses(inv: GroupInvariants) -> List[ObstructionCert]:
    return [row.witness for row in inv.spectrum if row.witness is not None]


def _pass_fail(ok: bool, good: str, bad: str) -> Result:
    return (CheckStatus.PASS, good) if ok else (CheckStatus.FAIL, bad)


def check_abelian_characterisation(inv: GroupInvariants) -> Result:
    t31, t22 = inv.tmn(3, 1), inv.tmn(2, 2)
    if t31 is None or t22 is None:
        return CheckStatus.UNKNOWN, "T(3,1) or T(2,2) undecided"
    both = t31 and t22
    return _pass_fail(
        both == inv.is_abelian,
        f"T(3,1) and T(2,2): {both}, abelian: {inv.is_abelian}",
        f"T(3,1)={t31}, T(2,2)={t22} but abelian={inv.is_abelian}",
    )


def check_small_obstructions(inv: GroupInvariants) -> Result:
    if inv.is_abelian:
        return CheckStatus.SKIP, "abelian"
    g = inv.group
    x, y = _least_noncommuting_pair(inv)
    xy, yx = g.multiply(x, y), g.multiply(y, x)
    three = ObstructionCert.canonical([[x], [y], [xy]])
    two = ObstructionCert.canonical([[x, y], [xy, yx]])
    c3 = verify_certificate(g, three, 3, 1)
    c2 = verify_certificate(g, two, 2, 2)
    pair = f"x={g.labels[x]}, y={g.labels[y]}"
    if not c3.valid:
        return CheckStatus.FAIL, f"{{x}},{{y}},{{xy}} with {pair}: {c3.violation}"
    if not c2.valid:
        return CheckStatus.FAIL, f"{{x,y}},{{xy,yx}} with {pair}: {c2.violation}"
    return CheckStatus.PASS, f"(3,1) and (2,2) obstructions verified for {pair}"


def check_area_bound(inv: GroupInvariants) -> Result:
    certs = _witnesses(inv)
    if not certs:
        return CheckStatus.SKIP, "no obstructions"
    zsize = len(inv.center)
    for cert in certs:
        if cert.m * cert.n > inv.noncentral:
            return CheckStatus.FAIL, f"({cert.m},{cert.n})-obstruction exceeds |G|-|Z| = {inv.noncentral}"
        if cert.m * cert.n == inv.noncentral:
            orders = inv.group.element_orders
            for a in inv.nc_graph.vertices:
                if orders[a] > cert.n + zsize:
                    return CheckStatus.FAIL, (
                        f"mn = |G|-|Z| at ({cert.m},{cert.n}) but |{inv.group.labels[a]}| = "
                        f"{orders[a]} > {cert.n + zsize}"
                    )
    return CheckStatus.PASS, f"{len(certs)} obstructions within |G|-|Z| = {inv.noncentral}"


def check_half_order(inv: GroupInvariants) -> Result:
    k = inv.group.order
    for m in (2, 3, 4):
        n = ceil(k / m)
        verdict = inv.tmn(m, n)
        if verdict is None:
            return CheckStatus.UNKNOWN, f"T({m},{n}) undecided"
        if not verdict:
            return CheckStatus.FAIL, f"not T({m},{n})"
    return CheckStatus.PASS, "T(m, ceil(|G|/m)) for m = 2, 3, 4"


def _within_part_excess(inv: GroupInvariants, offset: int) -> Result:
    certs = _witnesses(inv)
    if not certs:
        return CheckStatus.SKIP, "no obstructions"
    for cert in certs:
        inner = max(clique_within(inv.partition, inv.group, part) for part in cert.parts)
        if cert.m - offset + inner > inv.w:
            return CheckStatus.FAIL, (
                f"({cert.m},{cert.n}): m{'-1' if offset else ''} + max w(A_i) = "
                f"{cert.m - offset + inner} > w = {inv.w}"
            )
    return CheckStatus.PASS, f"{len(certs)} obstructions satisfy the bound"


def check_part_cliques(inv: GroupInvariants) -> Result:
    return _within_part_excess(inv, offset=1)


def check_part_cliques_strict(inv: GroupInvariants) -> Result:
    status, details = _within_part_excess(inv, offset=0)
    if status is CheckStatus.PASS:
        return CheckStatus.DISPUTED_AGREE, details
    if status is CheckStatus.FAIL:
        return CheckStatus.DISPUTED_DISAGREE, details
    return status, details


def check_clique_product(inv: GroupInvariants) -> Result:
    for m, bound in _boundary(inv):
        if inv.w >= m * (bound + 1):
            return CheckStatus.FAIL, f"T({m},{bound + 1}) but w = {inv.w} >= {m * (bound + 1)}"
    return CheckStatus.PASS, f"w = {inv.w} < mn on every spectrum boundary"


def check_center_or_clique(inv: GroupInvariants) -> Result:
    zsize = len(inv.center)
    for m, bound in _boundary(inv):
        if not (zsize < bound + 1 or inv.w < m):
            return CheckStatus.FAIL, f"T({m},{bound + 1}) with |Z| = {zsize} and w = {inv.w}"
    return CheckStatus.PASS, f"|Z| = {zsize}, w = {inv.w}"


def check_singleton_characterisation(inv: GroupInvariants) -> Result:
    for m in range(2, inv.w + 3):
        verdict = inv.decide(m, 1)
        if verdict.status is DecisionStatus.UNKNOWN:
            return CheckStatus.UNKNOWN, f"T({m},1) undecided"
        member = verdict.status is DecisionStatus.IS_TMN
        if member != (inv.w < m):
            return CheckStatus.FAIL, f"T({m},1) is {member} but w = {inv.w}"
    return CheckStatus.PASS, f"T(m,1) iff w < m for m = 2..{inv.w + 2}"


def check_nilpotent_pairs(inv: GroupInvariants) -> Result:
    if inv.is_abelian:
        return CheckStatus.SKIP, "abelian"
    notes = []
    if inv.nilpotent:
        # T(m,n) with n <= p forces T(m,1) for every prime p dividing |G|
        p = inv.primes[-1]
        for m, bound in _boundary(inv):
            if 1 <= bound < p:
                return CheckStatus.FAIL, f"nilpotent, T({m},{bound + 1}) with {bound + 1} <= p = {p} but not T({m},1)"
        notes.append(f"nilpotent T(m,n) => T(m,1) for n <= {p}")
    if _n(inv, inv.w) <= 1 and len(inv.center) != 1:
        return CheckStatus.FAIL, f"T(w,2) with w = {inv.w} but |Z| = {len(inv.center)}"
    notes.append(f"N(w) = {_n(inv, inv.w)}, |Z| = {len(inv.center)}")
    return CheckStatus.PASS, "; ".join(notes)


def _nonabelian_quotients(inv: GroupInvariants):
    for normal in inv.normal_subgroups:
        q = inv.quotient_invariants(normal)
        if not q.is_abelian:
            yield normal, q


def check_small_normal(inv: GroupInvariants) -> Result:
    tested = 0
    for normal, _ in _nonabelian_quotients(inv):
        tested += 1
        for m in (2, 3):
            bound = _n(inv, m)
            if len(normal) >= bound + 1:
                return CheckStatus.FAIL, f"T({m},{bound + 1}) but normal subgroup of order {len(normal)}"
    if not tested:
        return CheckStatus.SKIP, "no tested normal subgroup with non-abelian quotient"
    return CheckStatus.PASS, f"{tested} normal subgroups checked"


def check_central_index(inv: GroupInvariants) -> Result:
    if inv.is_abelian:
        return CheckStatus.SKIP, "abelian"
    index = inv.group.order // len(inv.center)
    return _pass_fail(inv.w < index, f"w = {inv.w} < [G:Z] = {index}", f"w = {inv.w} >= [G:Z] = {index}")


def _coprime_up_to(inv: GroupInvariants) -> int:
    """Largest n such that no prime <= n divides |G|."""
    p = inv.smallest_prime
    return p - 1 if p else inv.group.order


def check_coprime_four(inv: GroupInvariants) -> Result:
    if inv.is_abelian:
        return CheckStatus.SKIP, "abelian"
    qualifying = [n for n in range(2, 6) if n <= _coprime_up_to(inv)]
    if not qualifying:
        return CheckStatus.SKIP, "2 divides |G|"
    bound = _n(inv, 4)
    for n in qualifying:
        if bound < n:
            return CheckStatus.FAIL, f"non-abelian but T(4,{n}) (N(4) = {bound})"
    return CheckStatus.PASS, f"not T(4,n) for n in {qualifying}"


def check_coprime_clique(inv: GroupInvariants) -> Result:
    if inv.is_abelian:
        return CheckStatus.SKIP, "abelian"
    g = inv.group
    x, y = _least_noncommuting_pair(inv)
    n = _coprime_up_to(inv)
    elements = [x, y]
    power = 0
    for _ in range(n):
        power = g.multiply(power, y)
        elements.append(g.multiply(x, power))
    if len(set(elements)) != len(elements) or not g.noncommuting_pairs(elements):
        return CheckStatus.FAIL, f"{{x, y, xy, ..., xy^{n}}} is not pairwise non-commuting"
    p = inv.smallest_prime
    if inv.w < p + 1:
        return CheckStatus.FAIL, f"w = {inv.w} < p + 1 = {p + 1}"
    return CheckStatus.PASS, f"{len(elements)} pairwise non-commuting elements, w = {inv.w} >= {p + 1}"


def check_center_prime(inv: GroupInvariants) -> Result:
    if inv.is_abelian or len(inv.center) == 1:
        return CheckStatus.SKIP, "abelian or centerless"
    p = inv.smallest_prime
    for m, bound in _boundary(inv):
        if p > max(m - 2, bound):
            return CheckStatus.FAIL, f"T({m},{bound + 1}) but p = {p} > max(m-2, n-1)"
    return CheckStatus.PASS, f"p = {p} within max(m-2, n-1) on the boundary"


def check_p_group_square(inv: GroupInvariants) -> Result:
    if not inv.is_p_group:
        return CheckStatus.SKIP, "not a p-group"
    p = inv.smallest_prime
    verdict = inv.tmn(p, p)
    if verdict is None:
        return CheckStatus.UNKNOWN, f"T({p},{p}) undecided"
    if verdict and not inv.is_abelian:
        return CheckStatus.FAIL, f"non-abelian {p}-group in T({p},{p})"
    return CheckStatus.PASS, f"T({p},{p}) is {verdict}, abelian {inv.is_abelian}"


def check_prime_count(inv: GroupInvariants) -> Result:
    if inv.is_abelian or not inv.nilpotent:
        return CheckStatus.SKIP, "not a non-abelian nilpotent group"
    t = len(inv.primes)
    n3 = _n(inv, 3) + 1
    if 3 ** t > n3 + 2:
        return CheckStatus.FAIL, f"|pi| = {t} but least n with T(3,n) is {n3}"
    details = f"|pi| = {t}, n3 = {n3}"
    if inv.group.order % 2:
        n4 = _n(inv, 4) + 1
        if 4 ** t > n4 + 6:
            return CheckStatus.FAIL, f"odd order, |pi| = {t} but least n with T(4,n) is {n4}"
        details += f", n4 = {n4}"
    return CheckStatus.PASS, details


def check_quotient_shift(inv: GroupInvariants) -> Result:
    if not inv.normal_subgroups:
        return CheckStatus.SKIP, "no proper nontrivial normal subgroup found"
    checked = 0
    for normal in inv.normal_subgroups:
        q = inv.quotient_invariants(normal)
        for m, bound in _boundary(inv):
            n = max(bound + 1, 2)
            smallest = n - n // 2
            q_bound = q.N(m)
            if q_bound is None:
                raise _Undecided(f"N({m}) of G/N undecided")
            if q_bound >= smallest:
                return CheckStatus.FAIL, (
                    f"T({m},{n}) but G/N (|N| = {len(normal)}) not T({m},{smallest})"
                )
            checked += 1
    return CheckStatus.PASS, f"{checked} (N, m) pairs checked"


def check_derived_length(inv: GroupInvariants) -> Result:
    if not inv.solvable:
        return CheckStatus.SKIP, "not solvable"
    d = inv.derived.derived_length
    n3 = _n(inv, 3) + 1
    if 2 ** d > 2 * n3:
        return CheckStatus.FAIL, f"derived length {d} but least n with T(3,n) is {n3}"
    details = f"d = {d}, n3 = {n3}"
    if 2 ** d == 2 * n3:
        details += " (sharp)"
    if inv.group.order % 2:
        n4 = _n(inv, 4) + 1
        if 2 ** d > 2 * n4:
            return CheckStatus.FAIL, f"odd order, derived length {d} but least n with T(4,n) is {n4}"
        details += f", n4 = {n4}"
    return CheckStatus.PASS, details


def check_sylow_bound(inv: GroupInvariants) -> Result:
    tested = []
    for p in inv.primes:
        data = inv.sylow(p)
        if not data.trivial_intersection:
            continue
        tested.append(f"v_{p} = {data.count}")
        for m, bound in _boundary(inv):
            if data.count > m * (bound + 1) - 1:
                return CheckStatus.FAIL, f"v_{p} = {data.count} > mn - 1 at T({m},{bound + 1})"
    if not tested:
        return CheckStatus.SKIP, "no prime with trivially intersecting Sylow subgroups"
    return CheckStatus.PASS, ", ".join(tested)


def check_small_product_solvable(inv: GroupInvariants) -> Result:
    if inv.solvable:
        return CheckStatus.PASS, "solvable"
    for m in range(2, 22):
        if _n(inv, m) < 21 // m:
            return CheckStatus.FAIL, f"non-solvable T({m},{_n(inv, m) + 1}) with mn <= 21"
    return CheckStatus.PASS, "non-solvable and not T(m,n) for any mn <= 21"


def check_three_center(inv: GroupInvariants) -> Result:
    if inv.is_abelian:
        return CheckStatus.SKIP, "abelian"
    zsize = len(inv.center)
    return _pass_fail(
        _n(inv, 3) >= zsize,
        f"not T(3,{zsize})",
        f"non-abelian T(3,|Z|) with |Z| = {zsize}",
    )


def check_nilpotent_prime_power(inv: GroupInvariants) -> Result:
    if inv.is_abelian or not inv.nilpotent or len(inv.center) == 1:
        return CheckStatus.SKIP, "not non-abelian nilpotent with nontrivial center"
    p, t = inv.smallest_prime, len(inv.primes)
    for m, bound in _boundary(inv):
        if not (p <= m - 2 or p ** t <= bound):
            return CheckStatus.FAIL, f"T({m},{bound + 1}) with p = {p}, t = {t}"
    return CheckStatus.PASS, f"p = {p}, t = {t}"


def check_nilpotent_small(inv: GroupInvariants) -> Result:
    if inv.is_abelian or not inv.nilpotent:
        return CheckStatus.SKIP, "not non-abelian nilpotent"
    if not inv.is_p_group and _n(inv, 3) < 6:
        return CheckStatus.FAIL, f"not a p-group but T(3,{_n(inv, 3) + 1})"
    if inv.group.order % 2 and _n(inv, 4) < 3:
        return CheckStatus.FAIL, f"odd order non-abelian but T(4,{_n(inv, 4) + 1})"
    return CheckStatus.PASS, f"N(3) = {_n(inv, 3)}, N(4) = {_n(inv, 4)}"


def check_quotient_clique(inv: GroupInvariants) -> Result:
    if inv.is_abelian or not inv.normal_subgroups:
        return CheckStatus.SKIP, "abelian or no normal subgroup found"
    if _n(inv, inv.w) > 1:
        return CheckStatus.SKIP, f"not T(w,2) (N(w) = {_n(inv, inv.w)})"
    for normal in inv.normal_subgroups:
        wq = inv.quotient_invariants(normal).w
        if wq >= inv.w:
            return CheckStatus.FAIL, f"w(G/N) = {wq} >= w = {inv.w} for |N| = {len(normal)}"
    return CheckStatus.PASS, f"w(G/N) < {inv.w} for {len(inv.normal_subgroups)} normal subgroups"


def check_center_solvable(inv: GroupInvariants) -> Result:
    if inv.solvable:
        return CheckStatus.PASS, "solvable"
    zsize = len(inv.center)
    return _pass_fail(
        _n(inv, 21) >= zsize,
        f"non-solvable and not T(21,{zsize})",
        f"non-solvable T(21,i) with i <= |Z| = {zsize}",
    )


SOLVABILITY_TABLE = ((2, 21), (3, 16), (4, 13), (5, 8), (6, 8), (7, 7), (8, 7))


def check_solvability_table(inv: GroupInvariants) -> Result:
    if inv.solvable:
        return CheckStatus.PASS, "solvable"
    for n, m_bound in SOLVABILITY_TABLE:
        if _n(inv, m_bound) < n:
            return CheckStatus.FAIL, f"non-solvable T({m_bound},{n})"
    return CheckStatus.PASS, "non-solvable and outside every listed T(m,n)"


def compare_spectra(child: GroupInvariants, parent: GroupInvariants, name: str = "H") -> Result:
    """N_H(m) <= N_G(m) for every m, for H a subgroup or quotient of G.

    An unknown row on either side gives UNKNOWN.
    """
    if child.w > parent.w:
        return CheckStatus.FAIL, f"w({name}) = {child.w} > w = {parent.w}"
    for m in range(2, max(child.w, parent.w) + 2):
        try:
            below, above = _n(child, m), _n(parent, m)
        except _Undecided as e:
            return CheckStatus.UNKNOWN, f"{name}: {e}"
        if below > above:
            return CheckStatus.FAIL, f"N_{name}({m}) = {below} > N({m}) = {above}"
    return CheckStatus.PASS, f"spectrum of {name} (order {child.group.order}) lies below"


def check_subgroup_quotient_spectra(inv: GroupInvariants) -> Result:
    if not inv.normal_subgroups:
        return CheckStatus.SKIP, "no tested normal subgroup"
    for normal in inv.normal_subgroups:
        for name, child in (
            (f"N{len(normal)}", inv.subgroup_invariants(normal)),
            (f"G/N{len(normal)}", inv.quotient_invariants(normal)),
        ):
            status, details = compare_spectra(child, inv, name)
            if status is not CheckStatus.PASS:
                return status, details
    return CheckStatus.PASS, f"{len(inv.normal_subgroups)} normal subgroups and their quotients lie below"


CHECKS: List[Tuple[str, Callable[[GroupInvariants], Result]]] = [
    ("C1", check_abelian_characterisation),
    ("C2", check_small_obstructions),
    ("C3", check_area_bound),
    ("C4", check_half_order),
    ("C5", check_part_cliques),
    ("C5s", check_part_cliques_strict),
    ("C6", check_clique_product),
    ("C7", check_center_or_clique),
    ("C8", check_singleton_characterisation),
    ("C9", check_nilpotent_pairs),
    ("C10", check_small_normal),
    ("C11", check_central_index),
    ("C12", check_coprime_four),
    ("C13", check_coprime_clique),
    ("C14", check_center_prime),
    ("C15", check_p_group_square),
    ("C16", check_prime_count),
    ("C17", check_quotient_shift),
    ("C18", check_derived_length),
    ("C19", check_sylow_bound),
    ("C20", check_small_product_solvable),
    ("C21", check_three_center),
    ("C22", check_nilpotent_prime_power),
    ("C23", check_nilpotent_small),
    ("C24", check_quotient_clique),
    ("C25", check_center_solvable),
    ("C26", check_solvability_table),
    ("C27", check_subgroup_quotient_spectra),
]


def run_paper_checks(inv: GroupInvariants, only: Optional[List[str]] = None) -> List[CheckOutcome]:
    """Evaluate every named check on one group.

    Args:
        inv: Invariants of the group
        only: Optional list of check ids to run

    Returns:
        One CheckOutcome per check, in table order
    """
    outcomes = []
    for check_id, check in CHECKS:
        if only and check_id not in only:
            continue
        try:
            status, details = check(inv)
        except _Undecided as e:
            status, details = CheckStatus.UNKNOWN, str(e)
        if status is CheckStatus.FAIL:
            logger.error(f"{check_id} failed on {inv.origin}: {details}")
        elif status in (CheckStatus.UNKNOWN, CheckStatus.DISPUTED_DISAGREE):
            logger.warning(f"{check_id} on {inv.origin}: {status.value} ({details})")
        outcomes.append(CheckOutcome(check_id, inv.origin, status, details))
    return outcomes
