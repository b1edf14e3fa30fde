"""T-Spectrum

For each m, N(m) is the largest n admitting an (m,n)-obstruction, so G is a
T(m,n)-group exactly when n > N(m). Rows are found by descending n from the
best known upper bound until an obstruction turns up.
"""

from dataclasses import dataclass
from typing import List, Optional
import logging

from .group import FiniteGroup
from .nc_graph import TwinPartition
from .obstruction import DecisionStatus, ObstructionCert, SearchBudget, is_tmn

logger = logging.getLogger(__name__)

AREA_BOUND = "area bound"
INHERITED_BOUND = "inherited bound"
CLIQUE_BOUND = "clique bound"
EXHAUSTED = "exhausted search"
UNKNOWN_BOUND = "unknown"


@dataclass(frozen=True)
class SpectrumRow:
    """N(m) with the witness at n = N(m) and how n = N(m) + 1 was ruled out.

    When unknown is set, some search above N ran out of budget and N is only a
    lower bound.
    """

    m: int
    N: int
    witness: Optional[ObstructionCert]
    upper_proof: str
    unknown: bool = False
    nodes: int = 0

    def to_dict(self, group: FiniteGroup) -> dict:
        return {
            "m": self.m,
            "N": self.N,
            "witness": self.witness.to_json(group) if self.witness else None,
            "upper_proof": self.upper_proof,
            "unknown": self.unknown,
        }


def spectrum(
    group: FiniteGroup,
    partition: TwinPartition,
    w: int,
    m_max: Optional[int] = None,
    budget: Optional[SearchBudget] = None,
) -> List[SpectrumRow]:
    """Compute rows m = 2 .. m_max (default w + 1).

    Args:
        group: Group to analyse
        partition: Its twin partition
        w: Clique number of group
        m_max: Last m to compute
        budget: Limits applied to each individual search

    Returns:
        One SpectrumRow per m; budget exhaustion marks the row instead of
        raising
    """
    budget = budget or SearchBudget()
    last = w + 1 if m_max is None else m_max
    noncentral = sum(partition.capacities)
    rows: List[SpectrumRow] = []
    previous: Optional[int] = None

    for m in range(2, last + 1):
        if m > w:
            rows.append(SpectrumRow(m=m, N=0, witness=None, upper_proof=CLIQUE_BOUND))
            previous = 0
            continue

        area = noncentral // m
        start = area if previous is None else min(area, previous)
        unknown = False
        nodes = 0
        found_n, witness = 0, None
        for n in range(start, 0, -1):
            decision = is_tmn(group, m, n, budget, partition)
            nodes += decision.nodes
            if decision.status is DecisionStatus.NOT_TMN:
                found_n, witness = n, decision.certificate
                break
            if decision.status is DecisionStatus.UNKNOWN:
                unknown = True

        if unknown:
            proof = UNKNOWN_BOUND
        elif found_n < start:
            proof = EXHAUSTED
        elif start < area:
            proof = INHERITED_BOUND
        else:
            proof = AREA_BOUND

        row = SpectrumRow(m=m, N=found_n, witness=witness, upper_proof=proof, unknown=unknown, nodes=nodes)
        if unknown:
            logger.warning(f"{group.origin}: N({m}) >= {found_n} only, a search ran out of budget")
        logger.debug(f"{group.origin}: N({m}) = {found_n} ({proof})")
        rows.append(row)
        previous = None if unknown else found_n

    return rows


def n_of(rows: List[SpectrumRow], m: int) -> Optional[int]:
    """N(m) from computed rows, 0 beyond the last row's clique bound, None if absent."""
    for row in rows:
        if row.m == m:
            return row.N
    if rows and m > rows[-1].m and rows[-1].N == 0:
        return 0
    return None
