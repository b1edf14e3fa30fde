"""Finite Groups as Multiplication Tables

A finite group is stored as a k x k numpy table of element indices with the
identity at index 0. Everything else in the toolkit (non-commuting graph,
obstruction search, structural checks) works on these indices.
"""

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, List, Optional, Sequence, Tuple
import logging

import numpy as np

from .errors import (
    AssociativityError,
    IdentityError,
    LabelError,
    LatinSquareError,
    NotNormalError,
    NotSubgroupError,
    SpecError,
)

logger = logging.getLogger(__name__)

ASSOCIATIVITY_MODES = ("full", "sample", "none")


@dataclass(frozen=True)
class ElementSet:
    """Sorted, duplicate-free set of element indices of a group of given order."""

    members: Tuple[int, ...]
    parent_order: int

    def __post_init__(self):
        if any(b <= a for a, b in zip(self.members, self.members[1:])):
            raise ValueError("ElementSet members must be sorted and distinct")
        if self.members and (self.members[0] < 0 or self.members[-1] >= self.parent_order):
            raise ValueError(
                f"ElementSet members must lie in 0..{self.parent_order - 1}"
            )

    @classmethod
    def of(cls, members: Iterable[int], parent_order: int) -> "ElementSet":
        """Build from any iterable, sorting and removing duplicates."""
        return cls(tuple(sorted({int(x) for x in members})), parent_order)

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, x) -> bool:
        return int(x) in self._lookup

    @cached_property
    def _lookup(self) -> frozenset:
        return frozenset(self.members)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.members, dtype=np.int64)

    def mask(self) -> np.ndarray:
        """Boolean membership vector of length parent_order."""
        m = np.zeros(self.parent_order, dtype=bool)
        m[list(self.members)] = True
        return m


def check_table(
    mul: np.ndarray,
    associativity: str = "full",
    spot_check_factor: int = 10,
) -> np.ndarray:
    """Validate a multiplication table and return its inverse table.

    Checks run in order: shape, Latin square, identity at index 0, inverses,
    associativity. The first failure raises with the offending row, column or
    triple.

    Args:
        mul: k x k integer table
        associativity: "full" (all k^3 triples), "sample" (random triples,
            seeded by k) or "none"
        spot_check_factor: Triples per element in sample mode

    Returns:
        Length-k inverse table

    Raises:
        LatinSquareError: Row or column is not a permutation of 0..k-1
        IdentityError: Index 0 is not a two-sided identity
        AssociativityError: Some triple violates (xy)z = x(yz)
    """
    if associativity not in ASSOCIATIVITY_MODES:
        raise SpecError(f"Unknown associativity mode: {associativity}")

    k = mul.shape[0] if mul.ndim else 0
    if mul.ndim != 2 or mul.shape[1] != k or k < 1:
        raise LatinSquareError(f"Table must be square and nonempty, got shape {mul.shape}")
    if mul.min() < 0 or mul.max() >= k:
        raise LatinSquareError(f"Table entries must lie in 0..{k - 1}")

    expected = np.arange(k)
    bad_rows = np.flatnonzero((np.sort(mul, axis=1) != expected).any(axis=1))
    if bad_rows.size:
        raise LatinSquareError(f"Row {bad_rows[0]} repeats an entry")
    bad_cols = np.flatnonzero((np.sort(mul, axis=0) != expected[:, None]).any(axis=0))
    if bad_cols.size:
        raise LatinSquareError(f"Column {bad_cols[0]} repeats an entry")

    if not (np.array_equal(mul[0], expected) and np.array_equal(mul[:, 0], expected)):
        raise IdentityError("Element 0 is not the identity")

    # Latin rows guarantee exactly one 0 per row
    inv = np.argmax(mul == 0, axis=1)
    bad_inv = np.flatnonzero(mul[inv, expected] != 0)
    if bad_inv.size:
        raise IdentityError(f"Element {bad_inv[0]} has no two-sided inverse")

    if associativity == "full":
        for x in range(k):
            left = mul[mul[x]]  # [y, z] -> (xy)z
            right = mul[x][mul]  # [y, z] -> x(yz)
            diff = np.argwhere(left != right)
            if diff.size:
                y, z = (int(v) for v in diff[0])
                raise AssociativityError(
                    f"Associativity fails at triple ({x}, {y}, {z})", triple=(x, y, z)
                )
    elif associativity == "sample":
        rng = np.random.default_rng(seed=k)
        triples = rng.integers(0, k, size=(spot_check_factor * k, 3))
        x, y, z = triples[:, 0], triples[:, 1], triples[:, 2]
        bad = np.flatnonzero(mul[mul[x, y], z] != mul[x, mul[y, z]])
        if bad.size:
            t = tuple(int(v) for v in triples[bad[0]])
            raise AssociativityError(f"Associativity fails at triple {t}", triple=t)

    return inv


def default_labels(order: int) -> List[str]:
    return ["e"] + [f"x{i}" for i in range(1, order)]


class FiniteGroup:
    """Finite group given by its multiplication table.

    The table is validated on construction and frozen afterwards, so one
    instance can be shared freely between analyses.
    """

    def __init__(
        self,
        mul,
        labels: Optional[Sequence[str]] = None,
        origin: str = "table",
        associativity: str = "full",
        spot_check_factor: int = 10,
    ):
        """Validate and wrap a multiplication table.

        Args:
            mul: k x k table of element indices, identity at index 0
            labels: Optional distinct element labels (defaults to e, x1, x2, ...)
            origin: Construction descriptor, e.g. "S:4"
            associativity: "full", "sample" or "none"
            spot_check_factor: Triples per element in sample mode

        Raises:
            LabelError: If labels are missing, duplicated or of the wrong count
            TmnError: Any table validation failure from check_table
        """
        table = np.array(mul, dtype=np.int64)
        inv = check_table(table, associativity, spot_check_factor)

        if labels is None:
            labels = default_labels(table.shape[0])
        labels = [str(label) for label in labels]
        if len(labels) != table.shape[0]:
            raise LabelError(f"Expected {table.shape[0]} labels, got {len(labels)}")
        if any(not label for label in labels):
            raise LabelError("Labels must be nonempty")
        if len(set(labels)) != len(labels):
            seen = set()
            dup = next(label for label in labels if label in seen or seen.add(label))
            raise LabelError(f"Duplicate label: {dup}")

        table.setflags(write=False)
        inv.setflags(write=False)
        self.mul = table
        self.inv = inv
        self.labels: Tuple[str, ...] = tuple(labels)
        self.origin = origin
        self.identity = 0
        logger.debug(f"Group {origin} of order {self.order} validated")

    @property
    def order(self) -> int:
        return int(self.mul.shape[0])

    def __repr__(self) -> str:
        return f"FiniteGroup({self.origin}, order={self.order})"

    def _check_index(self, x: int) -> int:
        x = int(x)
        if not 0 <= x < self.order:
            raise SpecError(f"Element index {x} out of range for order {self.order}")
        return x

    def element_set(self, members: Iterable[int]) -> ElementSet:
        return ElementSet.of(members, self.order)

    def label(self, x: int) -> str:
        return self.labels[x]

    def index_of(self, label: str) -> int:
        """Element index for a label.

        Raises:
            LabelError: If no element carries the label
        """
        try:
            return self.labels.index(label)
        except ValueError:
            raise LabelError(f"No element labelled {label!r} in {self.origin}")

    def multiply(self, x: int, y: int) -> int:
        return int(self.mul[x, y])

    def commutes(self, x: int, y: int) -> bool:
        return bool(self.commute_matrix[x, y])

    @cached_property
    def commute_matrix(self) -> np.ndarray:
        """Boolean k x k matrix, True where xy = yx."""
        m = self.mul == self.mul.T
        m.setflags(write=False)
        return m

    @cached_property
    def commutator_table(self) -> np.ndarray:
        """Table of [x, y] = x^-1 y^-1 x y."""
        inv = self.inv
        table = self.mul[self.mul[inv[:, None], inv[None, :]], self.mul]
        table.setflags(write=False)
        return table

    @cached_property
    def is_abelian(self) -> bool:
        return bool(self.commute_matrix.all())

    def center(self) -> ElementSet:
        """Elements commuting with every element."""
        return self.element_set(np.flatnonzero(self.commute_matrix.all(axis=1)))

    def centralizer(self, x: int) -> ElementSet:
        """Elements commuting with x.

        Raises:
            SpecError: If x is not an element index
        """
        x = self._check_index(x)
        return self.element_set(np.flatnonzero(self.commute_matrix[x]))

    def element_order(self, x: int) -> int:
        """Least t >= 1 with x^t = identity."""
        x = self._check_index(x)
        t, power = 1, x
        while power != 0:
            power = int(self.mul[power, x])
            t += 1
        return t

    @cached_property
    def element_orders(self) -> np.ndarray:
        orders = np.array([self.element_order(x) for x in range(self.order)], dtype=np.int64)
        orders.setflags(write=False)
        return orders

    def power(self, x: int, t: int) -> int:
        result = 0
        for _ in range(t % self.element_order(x)):
            result = int(self.mul[result, x])
        return result

    def subgroup_generated(self, generators: Iterable[int]) -> ElementSet:
        """Smallest subgroup containing the generators (worklist closure).

        Args:
            generators: Element indices

        Returns:
            The generated subgroup as an ElementSet
        """
        gens = sorted({self._check_index(g) for g in generators} - {0})
        seen = np.zeros(self.order, dtype=bool)
        seen[0] = True
        frontier = [0]
        while frontier:
            products = self.mul[np.asarray(frontier)][:, gens].ravel() if gens else []
            fresh = []
            for p in np.unique(products):
                if not seen[p]:
                    seen[p] = True
                    fresh.append(int(p))
            frontier = fresh
        return self.element_set(np.flatnonzero(seen))

    def is_subgroup(self, members: ElementSet) -> bool:
        arr = members.as_array()
        if 0 not in members or arr.size == 0:
            return False
        return bool(members.mask()[self.mul[np.ix_(arr, arr)]].all())

    def require_subgroup(self, members: ElementSet) -> None:
        """Raise NotSubgroupError unless members form a subgroup."""
        if 0 not in members:
            raise NotSubgroupError("Subset does not contain the identity")
        arr = members.as_array()
        products = self.mul[np.ix_(arr, arr)]
        outside = np.argwhere(~members.mask()[products])
        if outside.size:
            i, j = outside[0]
            raise NotSubgroupError(
                f"Product of {self.labels[arr[i]]} and {self.labels[arr[j]]} "
                f"leaves the subset"
            )

    def normality_witness(
        self, sub: ElementSet, ambient: Optional[ElementSet] = None
    ) -> Optional[Tuple[int, int]]:
        """First (g, h) with g h g^-1 outside sub, or None if sub is normal.

        Args:
            sub: Subgroup to test
            ambient: Subgroup to conjugate by (defaults to the whole group)
        """
        gs = np.arange(self.order) if ambient is None else ambient.as_array()
        hs = sub.as_array()
        conj = self.mul[self.mul[gs[:, None], hs[None, :]], self.inv[gs][:, None]]
        bad = np.argwhere(~sub.mask()[conj])
        if bad.size:
            i, j = bad[0]
            return int(gs[i]), int(hs[j])
        return None

    def require_normal(self, sub: ElementSet) -> None:
        """Raise NotSubgroupError / NotNormalError unless sub is a normal subgroup."""
        self.require_subgroup(sub)
        witness = self.normality_witness(sub)
        if witness is not None:
            g, h = witness
            raise NotNormalError(
                f"Conjugating {self.labels[h]} by {self.labels[g]} leaves the subgroup",
                witness=witness,
            )

    def noncommuting_pairs(self, elements: Sequence[int]) -> bool:
        """True when the given elements pairwise fail to commute."""
        arr = np.asarray(list(elements), dtype=np.int64)
        block = self.commute_matrix[np.ix_(arr, arr)]
        return not (block & ~np.eye(len(arr), dtype=bool)).any()
