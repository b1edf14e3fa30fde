"""Capacity Packing Oracle

When every pair of twin classes is fully non-commuting, an (m,n)-obstruction
exists exactly when the class capacities can be split into m disjoint groups
each summing to at least n. This module decides that packing question on the
capacity multiset alone, independently of the class search.
"""

from dataclasses import dataclass, field
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple
import logging

from .errors import SpecError

logger = logging.getLogger(__name__)


@dataclass
class PackingResult:
    """Packing decision; parts hold indices into the input capacity list."""

    feasible: bool
    parts: List[List[int]] = field(default_factory=list)


def _minimal_parts(values: Tuple[int, ...], counts: Tuple[int, ...], n: int) -> List[Tuple[int, ...]]:
    """Multisets (as count vectors) reaching n that lose that when any item is dropped.

    values are distinct and descending, so a multiset is minimal when its
    total minus its smallest chosen value falls below n.
    """
    found: List[Tuple[int, ...]] = []
    chosen = [0] * len(values)

    def extend(i: int, total: int) -> None:
        if total >= n:
            smallest = min(values[j] for j in range(len(values)) if chosen[j])
            if total - smallest < n:
                found.append(tuple(chosen))
            return
        if i == len(values):
            return
        for take in range(counts[i], -1, -1):
            chosen[i] = take
            extend(i + 1, total + take * values[i])
        chosen[i] = 0

    extend(0, 0)
    return found


def packing_oracle(capacities: Sequence[int], m: int, n: int) -> PackingResult:
    """Decide whether capacities split into m disjoint groups each summing to >= n.

    Classes are indivisible and may be left unused.

    Args:
        capacities: Positive class sizes
        m: Number of groups
        n: Required sum per group

    Returns:
        PackingResult with a witness assignment when feasible

    Raises:
        SpecError: Empty capacities or non-positive parameters
    """
    if not capacities:
        raise SpecError("Capacity multiset must be nonempty")
    if m < 1 or n < 1 or any(c < 1 for c in capacities):
        raise SpecError("Capacities, m and n must be positive")

    values = tuple(sorted(set(capacities), reverse=True))
    start = tuple(sum(1 for c in capacities if c == v) for v in values)

    @lru_cache(maxsize=None)
    def choice(counts: Tuple[int, ...], left: int) -> Optional[Tuple[int, ...]]:
        """A first part that leads to a full packing, or None."""
        if sum(c * v for c, v in zip(counts, values)) < left * n:
            return None
        for part in _minimal_parts(values, counts, n):
            rest = tuple(c - t for c, t in zip(counts, part))
            if left == 1 or choice(rest, left - 1) is not None:
                return part
        return None

    if choice(start, m) is None:
        logger.debug(f"Packing of {len(capacities)} classes into {m} parts of {n}: infeasible")
        return PackingResult(feasible=False)

    pools = {v: [i for i, c in enumerate(capacities) if c == v] for v in values}
    parts: List[List[int]] = []
    counts, left = start, m
    while left:
        part = choice(counts, left)
        indices: List[int] = []
        for v, take in zip(values, part):
            indices.extend(pools[v][:take])
            pools[v] = pools[v][take:]
        parts.append(sorted(indices))
        counts = tuple(c - t for c, t in zip(counts, part))
        left -= 1

    logger.debug(f"Packing of {len(capacities)} classes into {m} parts of {n}: feasible")
    return PackingResult(feasible=True, parts=parts)
