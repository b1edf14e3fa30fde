"""Non-Commuting Graph

Vertices are the noncentral elements; two are adjacent when they do not
commute. Elements with the same centralizer (twins) commute with each other
and have identical neighbourhoods, so the graph compresses to a quotient over
twin classes that the clique and obstruction searches run on.
"""

from dataclasses import dataclass
from functools import cached_property
from typing import Dict, List, Tuple
import logging

import numpy as np

from .errors import InvariantViolation
from .group import ElementSet, FiniteGroup

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class NCGraph:
    """Non-commuting graph; adjacency is indexed by vertex position."""

    vertices: Tuple[int, ...]
    adjacency: np.ndarray
    center: ElementSet

    @property
    def edge_count(self) -> int:
        return int(self.adjacency.sum()) // 2


@dataclass(frozen=True)
class TwinClass:
    representative: int
    members: Tuple[int, ...]

    @property
    def capacity(self) -> int:
        return len(self.members)


@dataclass(frozen=True, eq=False)
class TwinPartition:
    """Twin classes in order of least member, with class-level adjacency."""

    classes: Tuple[TwinClass, ...]
    class_adjacency: np.ndarray
    complete_multipartite: bool

    @property
    def capacities(self) -> List[int]:
        return [c.capacity for c in self.classes]

    @cached_property
    def neighbor_masks(self) -> List[int]:
        """Class adjacency rows as int bitmasks (bit j set when adjacent to class j)."""
        masks = []
        for row in self.class_adjacency:
            mask = 0
            for j in np.flatnonzero(row):
                mask |= 1 << int(j)
            masks.append(mask)
        return masks

    @cached_property
    def class_of(self) -> Dict[int, int]:
        return {x: i for i, c in enumerate(self.classes) for x in c.members}


def build_nc_graph(group: FiniteGroup) -> NCGraph:
    """Non-commuting graph on G minus Z(G)."""
    center = group.center()
    vertices = np.flatnonzero(~center.mask())
    adjacency = ~group.commute_matrix[np.ix_(vertices, vertices)]
    adjacency.setflags(write=False)
    graph = NCGraph(vertices=tuple(int(v) for v in vertices), adjacency=adjacency, center=center)
    logger.debug(f"NC graph of {group.origin}: {len(graph.vertices)} vertices, {graph.edge_count} edges")
    return graph


def twin_partition(graph: NCGraph, group: FiniteGroup) -> TwinPartition:
    """Group noncentral elements by exact centralizer.

    Args:
        graph: Non-commuting graph built from group
        group: The group itself

    Returns:
        Verified TwinPartition

    Raises:
        InvariantViolation: Classes fail to partition the vertices, or the
            class adjacency is not well defined
    """
    buckets: Dict[bytes, List[int]] = {}
    for v in graph.vertices:
        key = np.packbits(group.commute_matrix[v]).tobytes()
        buckets.setdefault(key, []).append(v)
    classes = tuple(TwinClass(representative=m[0], members=tuple(m)) for m in buckets.values())

    covered = sorted(x for c in classes for x in c.members)
    if covered != list(graph.vertices):
        raise InvariantViolation(f"Twin classes of {group.origin} do not partition the vertices")

    reps = np.asarray([c.representative for c in classes], dtype=np.int64)
    class_adj = ~group.commute_matrix[np.ix_(reps, reps)] if len(reps) else np.zeros((0, 0), dtype=bool)

    position = {v: i for i, v in enumerate(graph.vertices)}
    class_index = np.empty(len(graph.vertices), dtype=np.int64)
    for ci, c in enumerate(classes):
        for x in c.members:
            class_index[position[x]] = ci
    expected = class_adj[class_index[:, None], class_index[None, :]]
    if not np.array_equal(expected, graph.adjacency):
        raise InvariantViolation(f"Class adjacency of {group.origin} is not well defined")

    class_adj.setflags(write=False)
    n = len(classes)
    complete = bool(class_adj[~np.eye(n, dtype=bool)].all()) if n else True
    partition = TwinPartition(classes=classes, class_adjacency=class_adj, complete_multipartite=complete)
    logger.info(
        f"{group.origin}: {n} twin classes, capacities {partition.capacities}, "
        f"complete multipartite {complete}"
    )
    return partition
