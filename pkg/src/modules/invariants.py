"""Per-Group Analysis Cache

GroupInvariants computes the expensive facts about one group on first use
and keeps them: center, twin partition, clique number, spectrum, series,
Sylow data, normal subgroups and the analyses of quotients. Claim checks and
the command-line front end share one instance per group.
"""

from functools import cached_property
from typing import Dict, List, Optional, Tuple
import logging

from .clique import CliqueResult, clique_number
from .group import ElementSet, FiniteGroup
from .nc_graph import NCGraph, TwinPartition, build_nc_graph, twin_partition
from .obstruction import Decision, DecisionStatus, SearchBudget, is_tmn
from .spectrum import SpectrumRow, spectrum
from .structure import (
    CentralSeries,
    DerivedSeries,
    Quotient,
    SylowData,
    derived_series,
    is_nilpotent,
    normal_subgroups_for_checks,
    prime_divisors,
    quotient,
    subgroup_table,
    sylow_count,
)

logger = logging.getLogger(__name__)


class GroupInvariants:
    """Lazily computed, cached invariants of a single group."""

    def __init__(self, group: FiniteGroup, budget: Optional[SearchBudget] = None):
        self.group = group
        self.budget = budget or SearchBudget()
        self._decisions: Dict[Tuple[int, int], Decision] = {}
        self._sylow: Dict[int, SylowData] = {}
        self._quotients: Dict[Tuple[int, ...], "GroupInvariants"] = {}
        self._subgroups: Dict[Tuple[int, ...], "GroupInvariants"] = {}
        logger.debug(f"Invariants cache created for {group.origin}")

    @property
    def origin(self) -> str:
        return self.group.origin

    @cached_property
    def center(self) -> ElementSet:
        return self.group.center()

    @cached_property
    def nc_graph(self) -> NCGraph:
        return build_nc_graph(self.group)

    @cached_property
    def partition(self) -> TwinPartition:
        return twin_partition(self.nc_graph, self.group)

    @cached_property
    def clique(self) -> CliqueResult:
        return clique_number(self.partition, self.group)

    @property
    def w(self) -> int:
        return self.clique.w

    @property
    def noncentral(self) -> int:
        return self.group.order - len(self.center)

    @property
    def is_abelian(self) -> bool:
        return self.group.is_abelian

    @cached_property
    def derived(self) -> DerivedSeries:
        return derived_series(self.group)

    @cached_property
    def central_series(self) -> CentralSeries:
        return is_nilpotent(self.group)[1]

    @property
    def nilpotent(self) -> bool:
        return self.central_series.nilpotent

    @property
    def solvable(self) -> bool:
        return self.derived.solvable

    @cached_property
    def primes(self) -> List[int]:
        return prime_divisors(self.group.order)

    @property
    def is_p_group(self) -> bool:
        return len(self.primes) == 1

    @property
    def smallest_prime(self) -> Optional[int]:
        return self.primes[0] if self.primes else None

    def sylow(self, p: int) -> SylowData:
        if p not in self._sylow:
            self._sylow[p] = sylow_count(self.group, p)
        return self._sylow[p]

    @cached_property
    def normal_subgroups(self) -> List[ElementSet]:
        return normal_subgroups_for_checks(self.group)

    def quotient_invariants(self, normal: ElementSet) -> "GroupInvariants":
        """Invariants of G/N, cached per N."""
        if normal.members not in self._quotients:
            q: Quotient = quotient(self.group, normal)
            self._quotients[normal.members] = GroupInvariants(q.group, self.budget)
        return self._quotients[normal.members]

    def subgroup_invariants(self, sub: ElementSet) -> "GroupInvariants":
        """Invariants of a subgroup H taken as a group, cached per H."""
        if sub.members not in self._subgroups:
            self._subgroups[sub.members] = GroupInvariants(subgroup_table(self.group, sub), self.budget)
        return self._subgroups[sub.members]

    @cached_property
    def spectrum(self) -> List[SpectrumRow]:
        """Rows m = 2 .. w + 1."""
        return spectrum(self.group, self.partition, self.w, budget=self.budget)

    @property
    def spectrum_complete(self) -> bool:
        return not any(row.unknown for row in self.spectrum)

    def N(self, m: int) -> Optional[int]:
        """Largest n with an (m,n)-obstruction; None when that row is undecided."""
        if m > self.w:
            return 0
        for row in self.spectrum:
            if row.m == m:
                return None if row.unknown else row.N
        return None

    def decide(self, m: int, n: int) -> Decision:
        """Cached is_tmn decision."""
        key = (m, n)
        if key not in self._decisions:
            self._decisions[key] = is_tmn(self.group, m, n, self.budget, self.partition)
        return self._decisions[key]

    def tmn(self, m: int, n: int) -> Optional[bool]:
        """True / False for T(m,n), None when the search ran out of budget.

        Uses the spectrum when it is already computed and decided for m.
        """
        if "spectrum" in self.__dict__ or m > self.w:
            bound = self.N(m)
            if bound is not None:
                return n > bound
        status = self.decide(m, n).status
        if status is DecisionStatus.UNKNOWN:
            return None
        return status is DecisionStatus.IS_TMN
