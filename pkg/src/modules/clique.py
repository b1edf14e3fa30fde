"""Clique Number of the Non-Commuting Graph

w(G) is the largest size of a set of pairwise non-commuting elements. Twin
class members commute, so a clique uses at most one element per class and the
search runs on the class quotient graph: branch and bound with greedy-coloring
upper bounds over int bitmasks.
"""

from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple
import logging

import networkx as nx

from .errors import InstanceTooLargeError, InvariantViolation
from .group import ElementSet, FiniteGroup
from .nc_graph import TwinPartition

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CliqueResult:
    """Maximum non-commuting set with the twin classes it was drawn from."""

    w: int
    witness: ElementSet
    exhausted: bool = True
    classes: Tuple[int, ...] = ()


def color_sort(candidates: Sequence[int], masks: List[int]) -> List[Tuple[int, int]]:
    """Greedy coloring of candidates in the given order.

    Returns:
        (vertex, color) pairs sorted by color, colors starting at 1
    """
    color_sets: List[int] = []
    members: List[List[int]] = []
    for v in candidates:
        for c, used in enumerate(color_sets):
            if not masks[v] & used:
                color_sets[c] |= 1 << v
                members[c].append(v)
                break
        else:
            color_sets.append(1 << v)
            members.append([v])
    return [(v, c + 1) for c, group in enumerate(members) for v in group]


def max_clique_classes(masks: List[int], allowed: Optional[Iterable[int]] = None) -> List[int]:
    """Maximum clique of a graph given by adjacency bitmasks.

    Candidates are ordered by descending degree, ties by index; the first
    optimum found in that order is returned.

    Args:
        masks: Bit j of masks[i] set when i and j are adjacent
        allowed: Optional subset of vertices to search within

    Returns:
        Sorted vertex indices of a maximum clique
    """
    vertices = list(range(len(masks))) if allowed is None else sorted(set(allowed))
    if not vertices:
        return []
    allowed_mask = 0
    for v in vertices:
        allowed_mask |= 1 << v
    restricted = [m & allowed_mask for m in masks]
    order = sorted(vertices, key=lambda v: (-bin(restricted[v]).count("1"), v))

    best: List[int] = []

    def expand(clique: List[int], candidates: List[int]) -> None:
        nonlocal best
        colored = color_sort(candidates, restricted)
        for i in range(len(colored) - 1, -1, -1):
            v, bound = colored[i]
            if len(clique) + bound <= len(best):
                return
            grown = clique + [v]
            remaining = [u for u, _ in colored[:i] if restricted[v] >> u & 1]
            if remaining:
                expand(grown, remaining)
            elif len(grown) > len(best):
                best = grown

    expand([], order)
    return sorted(best)


def clique_number(partition: TwinPartition, group: FiniteGroup) -> CliqueResult:
    """Exact w(G) with a witness of least class members.

    Abelian groups get w = 1 (witness the element at index 1) unless trivial,
    where w = 0.

    Raises:
        InvariantViolation: The witness is not pairwise non-commuting
    """
    if not partition.classes:
        members = [1] if group.order > 1 else []
        return CliqueResult(w=len(members), witness=group.element_set(members))

    chosen = max_clique_classes(partition.neighbor_masks)
    witness = group.element_set(partition.classes[c].members[0] for c in chosen)
    if len(witness) != len(chosen) or not group.noncommuting_pairs(witness):
        raise InvariantViolation(f"Clique witness for {group.origin} fails verification")
    logger.info(f"w({group.origin}) = {len(witness)}")
    return CliqueResult(w=len(witness), witness=witness, classes=tuple(chosen))


def clique_within(partition: TwinPartition, group: FiniteGroup, elements: Iterable[int]) -> int:
    """w(A): largest pairwise non-commuting subset of the given elements."""
    elements = set(int(x) for x in elements)
    if not elements:
        return 0
    classes = {partition.class_of[x] for x in elements if x in partition.class_of}
    return max(1, len(max_clique_classes(partition.neighbor_masks, classes)))


def element_clique_number(group: FiniteGroup, max_order: int = 24) -> CliqueResult:
    """Element-level w(G) from networkx maximal-clique enumeration.

    Independent of the twin compression; meant for small groups only.

    Raises:
        InstanceTooLargeError: Order above max_order
    """
    if group.order > max_order:
        raise InstanceTooLargeError(
            f"Element-level clique search refuses order {group.order} > {max_order}"
        )
    noncentral = [x for x in range(group.order) if not group.commute_matrix[x].all()]
    if not noncentral:
        members = [1] if group.order > 1 else []
        return CliqueResult(w=len(members), witness=group.element_set(members))

    graph = nx.Graph()
    graph.add_nodes_from(noncentral)
    graph.add_edges_from(
        (x, y) for i, x in enumerate(noncentral) for y in noncentral[i + 1:] if not group.commutes(x, y)
    )
    best = min(nx.find_cliques(graph), key=lambda c: (-len(c), sorted(c)))
    return CliqueResult(w=len(best), witness=group.element_set(best))
