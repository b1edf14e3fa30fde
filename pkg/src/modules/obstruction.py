"""Obstruction Search

An (m,n)-obstruction is m subsets of size n with no commuting pair taken from
two different subsets. G is a T(m,n)-group exactly when none exists.

The main engine searches over twin classes: members of one class commute, so
each class feeds at most one part, and two classes in different parts must be
adjacent in the class quotient graph. A brute-force element-level search is
kept as an independent oracle for small instances.
"""

from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Sequence, Tuple
import logging
import sys
import time

from .clique import color_sort
from .errors import BudgetExceeded, InstanceTooLargeError, InvariantViolation, SpecError
from .group import FiniteGroup
from .nc_graph import TwinPartition, build_nc_graph, twin_partition

logger = logging.getLogger(__name__)

TIME_CHECK_INTERVAL = 4096


class DecisionStatus(Enum):
    IS_TMN = "IS_TMN"
    NOT_TMN = "NOT_TMN"
    UNKNOWN = "UNKNOWN"


@dataclass(frozen=True)
class SearchBudget:
    """Per-search limits on expanded nodes and wall-clock seconds."""

    node_limit: int = 10_000_000
    time_limit_seconds: float = 60.0

    def __post_init__(self):
        if self.node_limit <= 0 or self.time_limit_seconds <= 0:
            raise SpecError("Search budget limits must be positive")

    @classmethod
    def from_config(cls, config: dict) -> "SearchBudget":
        search = config.get("search", {})
        return cls(
            node_limit=int(search.get("node_limit", 10_000_000)),
            time_limit_seconds=float(search.get("time_limit_seconds", 60)),
        )


@dataclass(frozen=True)
class ObstructionCert:
    """m disjoint parts of n noncentral elements each."""

    parts: Tuple[Tuple[int, ...], ...]

    @property
    def m(self) -> int:
        return len(self.parts)

    @property
    def n(self) -> int:
        return len(self.parts[0]) if self.parts else 0

    @classmethod
    def canonical(cls, parts: Sequence[Sequence[int]]) -> "ObstructionCert":
        """Sort elements within parts and parts by their first element."""
        return cls(tuple(sorted(tuple(sorted(int(x) for x in p)) for p in parts)))

    def drop_part(self, index: int = -1) -> "ObstructionCert":
        parts = list(self.parts)
        del parts[index]
        return ObstructionCert(tuple(parts))

    def shrink(self) -> "ObstructionCert":
        """Drop the largest element of every part."""
        return ObstructionCert(tuple(p[:-1] for p in self.parts))

    def elements(self) -> List[int]:
        return [x for p in self.parts for x in p]

    def to_json(self, group: FiniteGroup) -> List[List[dict]]:
        return [[{"index": x, "label": group.labels[x]} for x in part] for part in self.parts]

    def describe(self, group: FiniteGroup) -> str:
        return ", ".join("{" + ", ".join(group.labels[x] for x in part) + "}" for part in self.parts)


@dataclass(frozen=True)
class CertificateCheck:
    valid: bool
    violation: Optional[str] = None


@dataclass(frozen=True)
class Decision:
    status: DecisionStatus
    m: int
    n: int
    certificate: Optional[ObstructionCert] = None
    nodes: int = 0


def _check_parameters(m: int, n: int) -> None:
    if m < 2:
        raise SpecError(f"m must be at least 2, got {m}")
    if n < 1:
        raise SpecError(f"n must be at least 1, got {n}")


def verify_certificate(group: FiniteGroup, cert: ObstructionCert, m: int, n: int) -> CertificateCheck:
    """Check that cert is an (m,n)-obstruction in group.

    Returns:
        CertificateCheck with the first violation found, if any
    """
    if len(cert.parts) != m:
        return CertificateCheck(False, f"expected {m} parts, found {len(cert.parts)}")
    owner = {}
    for i, part in enumerate(cert.parts):
        if len(part) != n:
            return CertificateCheck(False, f"part {i} has {len(part)} elements, expected {n}")
        for x in part:
            if not 0 <= x < group.order:
                return CertificateCheck(False, f"element index {x} out of range")
            if x in owner:
                if owner[x] == i:
                    return CertificateCheck(False, f"{group.labels[x]} repeated in part {i}")
                return CertificateCheck(
                    False, f"{group.labels[x]} appears in parts {owner[x]} and {i}"
                )
            owner[x] = i
    for x in owner:
        if group.commute_matrix[x].all():
            return CertificateCheck(False, f"{group.labels[x]} is central")
    for i, first in enumerate(cert.parts):
        for j in range(i + 1, len(cert.parts)):
            for x in first:
                for y in cert.parts[j]:
                    if group.commutes(x, y):
                        return CertificateCheck(
                            False,
                            f"{group.labels[x]} (part {i}) commutes with {group.labels[y]} (part {j})",
                        )
    return CertificateCheck(True)


class ObstructionSearch:
    """Class-level backtracking search for one (m, n) query.

    Classes are visited in order of descending capacity, then class index.
    Each class joins an open part, starts the next part, or stays unused.
    Parts are numbered by creation, and consecutive classes that are
    interchangeable (same capacity, same adjacency apart from each other)
    take non-decreasing part numbers, unused counting as m.
    """

    def __init__(
        self,
        partition: TwinPartition,
        m: int,
        n: int,
        budget: SearchBudget,
    ):
        self.partition = partition
        self.m = m
        self.n = n
        self.budget = budget

        k = len(partition.classes)
        self.order = sorted(range(k), key=lambda c: (-partition.classes[c].capacity, c))
        position = {c: p for p, c in enumerate(self.order)}
        self.caps = [partition.classes[c].capacity for c in self.order]

        # adjacency as bitmasks over search positions
        self.adj = []
        for c in self.order:
            mask = 0
            for j, adjacent in enumerate(partition.class_adjacency[c]):
                if adjacent:
                    mask |= 1 << position[j]
            self.adj.append(mask)

        self.interchangeable = [False] * k
        for p in range(1, k):
            if self.caps[p] == self.caps[p - 1]:
                here = self.adj[p] & ~(1 << (p - 1))
                prev = self.adj[p - 1] & ~(1 << p)
                self.interchangeable[p] = here == prev

        self.full_mask = (1 << k) - 1
        self.nodes = 0
        self._deadline = 0.0

        self.part_mask = [0] * m
        self.part_cap = [0] * m
        self.part_compat = [self.full_mask] * m
        self.started = 0
        self.full_parts = 0
        self.dest = [m] * k

    def _cap_sum(self, mask: int) -> int:
        total = 0
        while mask:
            low = mask & -mask
            total += self.caps[low.bit_length() - 1]
            mask ^= low
        return total

    def _tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.budget.node_limit:
            raise BudgetExceeded(f"Node limit {self.budget.node_limit} reached", nodes=self.nodes)
        if self.nodes % TIME_CHECK_INTERVAL == 0 and time.monotonic() > self._deadline:
            raise BudgetExceeded(
                f"Time limit {self.budget.time_limit_seconds}s reached", nodes=self.nodes
            )

    def _others_compat(self) -> List[int]:
        """For each started part, AND of compat masks over the other started parts."""
        s = self.started
        prefix = [self.full_mask] * (s + 1)
        for j in range(s):
            prefix[j + 1] = prefix[j] & self.part_compat[j]
        suffix = self.full_mask
        result = [0] * s
        for j in range(s - 1, -1, -1):
            result[j] = prefix[j] & suffix
            suffix &= self.part_compat[j]
        return result

    def _hopeless(self, p: int, others: List[int], all_compat: int) -> bool:
        remaining = self.full_mask & ~((1 << p) - 1)
        usable = 0
        deficit = 0
        for j in range(self.started):
            need = self.n - self.part_cap[j]
            if need <= 0:
                continue
            eligible = remaining & others[j]
            if self._cap_sum(eligible) < need:
                return True
            usable |= eligible
            deficit += need

        new_parts = self.m - self.started
        if new_parts:
            fresh = remaining & all_compat
            if self._cap_sum(fresh) < self.n * new_parts:
                return True
            usable |= fresh
            deficit += self.n * new_parts
            if new_parts >= 2:
                candidates = [q for q in range(p, len(self.caps)) if fresh >> q & 1]
                colored = color_sort(candidates, self.adj)
                colors = colored[-1][1] if colored else 0
                if colors < new_parts:
                    return True

        return self._cap_sum(usable) < deficit

    def _place(self, p: int, j: int) -> None:
        bit = 1 << p
        if j == self.started:
            self.started += 1
        self.part_mask[j] |= bit
        self.part_cap[j] += self.caps[p]
        self.part_compat[j] &= self.adj[p]
        if self.part_cap[j] >= self.n and self.part_cap[j] - self.caps[p] < self.n:
            self.full_parts += 1
        self.dest[p] = j

    def _unplace(self, p: int, j: int, saved_compat: int) -> None:
        if self.part_cap[j] >= self.n and self.part_cap[j] - self.caps[p] < self.n:
            self.full_parts -= 1
        self.part_mask[j] &= ~(1 << p)
        self.part_cap[j] -= self.caps[p]
        self.part_compat[j] = saved_compat
        if self.part_mask[j] == 0:
            self.started -= 1
        self.dest[p] = self.m

    def _assign(self, p: int) -> bool:
        self._tick()
        if self.full_parts == self.m:
            return True
        if p == len(self.caps):
            return False

        others = self._others_compat()
        all_compat = self.full_mask
        for j in range(self.started):
            all_compat &= self.part_compat[j]
        if self._hopeless(p, others, all_compat):
            return False

        bit = 1 << p
        lower = self.dest[p - 1] if p and self.interchangeable[p] else 0

        for j in range(lower, self.started):
            if self.part_cap[j] >= self.n or not others[j] & bit:
                continue
            saved = self.part_compat[j]
            self._place(p, j)
            if self._assign(p + 1):
                return True
            self._unplace(p, j, saved)

        j = self.started
        if j < self.m and j >= lower and all_compat & bit:
            saved = self.part_compat[j]
            self._place(p, j)
            if self._assign(p + 1):
                return True
            self._unplace(p, j, saved)

        if lower <= self.m:
            self.dest[p] = self.m
            if self._assign(p + 1):
                return True
        return False

    def run(self) -> Optional[List[List[int]]]:
        """Run the search.

        Returns:
            Class indices of each part, or None when no obstruction exists

        Raises:
            BudgetExceeded: Node or time limit reached
        """
        self._deadline = time.monotonic() + self.budget.time_limit_seconds
        needed = len(self.caps) + 1000
        if sys.getrecursionlimit() < needed:
            sys.setrecursionlimit(needed)
        if not self._assign(0):
            return None
        parts = []
        for j in range(self.m):
            parts.append([self.order[p] for p in range(len(self.caps)) if self.part_mask[j] >> p & 1])
        return parts


def find_obstruction(
    group: FiniteGroup,
    m: int,
    n: int,
    budget: Optional[SearchBudget] = None,
    partition: Optional[TwinPartition] = None,
) -> Tuple[Optional[ObstructionCert], int]:
    """Search for an (m,n)-obstruction.

    Args:
        group: Group to search
        m: Number of parts (>= 2)
        n: Part size (>= 1)
        budget: Search limits (defaults to SearchBudget())
        partition: Prebuilt twin partition of group

    Returns:
        (certificate or None, nodes expanded)

    Raises:
        SpecError: m < 2 or n < 1
        BudgetExceeded: Limits reached before the search finished
        InvariantViolation: The found certificate fails verification
    """
    _check_parameters(m, n)
    budget = budget or SearchBudget()
    if partition is None:
        partition = twin_partition(build_nc_graph(group), group)

    noncentral = sum(partition.capacities)
    if m * n > noncentral:
        logger.debug(f"{group.origin} T({m},{n}): m*n exceeds {noncentral} noncentral elements")
        return None, 0

    search = ObstructionSearch(partition, m, n, budget)
    parts = search.run()
    if parts is None:
        logger.debug(f"{group.origin} T({m},{n}): no obstruction after {search.nodes} nodes")
        return None, search.nodes

    element_parts = []
    for classes in parts:
        members = sorted(x for c in classes for x in partition.classes[c].members)
        element_parts.append(members[:n])
    cert = ObstructionCert.canonical(element_parts)
    check = verify_certificate(group, cert, m, n)
    if not check.valid:
        raise InvariantViolation(f"Obstruction for {group.origin} T({m},{n}) invalid: {check.violation}")
    logger.debug(f"{group.origin} T({m},{n}): obstruction after {search.nodes} nodes")
    return cert, search.nodes


def is_tmn(
    group: FiniteGroup,
    m: int,
    n: int,
    budget: Optional[SearchBudget] = None,
    partition: Optional[TwinPartition] = None,
) -> Decision:
    """Decide whether group is a T(m,n)-group.

    Budget exhaustion gives an UNKNOWN decision rather than an exception.
    """
    try:
        cert, nodes = find_obstruction(group, m, n, budget, partition)
    except BudgetExceeded as e:
        logger.warning(f"{group.origin} T({m},{n}) undecided: {e} after {e.nodes} nodes")
        return Decision(DecisionStatus.UNKNOWN, m, n, nodes=e.nodes)
    if cert is None:
        return Decision(DecisionStatus.IS_TMN, m, n, nodes=nodes)
    return Decision(DecisionStatus.NOT_TMN, m, n, certificate=cert, nodes=nodes)


def brute_force_is_tmn(
    group: FiniteGroup,
    m: int,
    n: int,
    max_order: int = 24,
    max_mn: int = 12,
) -> Decision:
    """Element-level exhaustive decision, independent of twin classes.

    Elements are visited in index order; parts are numbered by their least
    element.

    Raises:
        InstanceTooLargeError: |G| > max_order or m*n > max_mn
    """
    _check_parameters(m, n)
    if group.order > max_order or m * n > max_mn:
        raise InstanceTooLargeError(
            f"Brute force limited to order <= {max_order} and m*n <= {max_mn}, "
            f"got order {group.order} and m*n = {m * n}"
        )

    vertices = [x for x in range(group.order) if not group.commute_matrix[x].all()]
    commuting = []
    for x in vertices:
        mask = 0
        for i, y in enumerate(vertices):
            if group.commutes(x, y):
                mask |= 1 << i
        commuting.append(mask)

    parts: List[List[int]] = []
    part_masks: List[int] = []
    nodes = 0

    def fits(i: int, j: int) -> bool:
        # i may join part j when it commutes with nothing in any other part
        return all(not (part_masks[l] & commuting[i]) for l in range(len(parts)) if l != j)

    def search(i: int) -> bool:
        nonlocal nodes
        nodes += 1
        if len(parts) == m and all(len(p) == n for p in parts):
            return True
        deficit = sum(n - len(p) for p in parts) + n * (m - len(parts))
        if len(vertices) - i < deficit:
            return False

        for j in range(len(parts)):
            if len(parts[j]) < n and fits(i, j):
                parts[j].append(vertices[i])
                part_masks[j] |= 1 << i
                if search(i + 1):
                    return True
                parts[j].pop()
                part_masks[j] &= ~(1 << i)
        if len(parts) < m and fits(i, len(parts)):
            parts.append([vertices[i]])
            part_masks.append(1 << i)
            if search(i + 1):
                return True
            parts.pop()
            part_masks.pop()
        return search(i + 1)

    if search(0):
        cert = ObstructionCert.canonical(parts)
        check = verify_certificate(group, cert, m, n)
        if not check.valid:
            raise InvariantViolation(f"Brute-force certificate invalid: {check.violation}")
        return Decision(DecisionStatus.NOT_TMN, m, n, certificate=cert, nodes=nodes)
    return Decision(DecisionStatus.IS_TMN, m, n, nodes=nodes)
