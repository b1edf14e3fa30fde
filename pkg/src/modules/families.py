"""Group Families and Spec Strings

Builds groups from spec strings:

    C:<n>            cyclic of order n, elements g^i
    D:<order>        dihedral of the given (even) order, elements a^i b^j
    Q:<order>        dicyclic (generalized quaternion for 2-power orders)
    S:<n>, A:<n>     symmetric / alternating on n points, n <= 7
    cayley:<path>    Cayley table file
    perm:<path>      permutation generator file
    <spec>*<spec>    direct product (left-associative)

Element orderings are canonical, so the same spec always yields the same
table and labels.
"""

from dataclasses import dataclass
from itertools import permutations
from math import factorial, prod
from pathlib import Path
from typing import List, Tuple
import logging

import numpy as np
from sympy.combinatorics import Permutation

from .errors import OrderCapError, SpecError
from .group import FiniteGroup
from .ingest import DEFAULT_ORDER_CAP, cycle_notation, permutation_table, read_group_file

logger = logging.getLogger(__name__)

MAX_PERMUTATION_DEGREE = 7


@dataclass(frozen=True)
class GroupSpec:
    """Parsed spec: a family letter with parameter, a file, or a product."""

    expression: str
    factors: Tuple[Tuple[str, str], ...]

    @classmethod
    def parse(cls, expression: str) -> "GroupSpec":
        """Parse a spec string into (kind, argument) factors.

        Raises:
            SpecError: If any factor is malformed
        """
        expression = expression.strip()
        if not expression:
            raise SpecError("Empty group spec")
        factors = []
        for raw in expression.split("*"):
            raw = raw.strip()
            kind, sep, arg = raw.partition(":")
            if not sep or not arg:
                raise SpecError(f"Malformed factor {raw!r}: expected <kind>:<arg>")
            kind = kind.strip()
            arg = arg.strip()
            if kind in ("C", "D", "Q", "S", "A"):
                if not arg.isdigit():
                    raise SpecError(f"Factor {raw!r}: parameter must be a positive integer")
                _check_parameter(kind, int(arg))
            elif kind not in ("cayley", "perm"):
                raise SpecError(f"Unknown group family {kind!r} in {raw!r}")
            factors.append((kind, arg))
        return cls(expression, tuple(factors))


def _check_parameter(kind: str, n: int) -> None:
    if kind == "C" and n < 1:
        raise SpecError("C:<n> needs n >= 1")
    if kind == "D" and (n < 4 or n % 2):
        raise SpecError("D:<order> needs an even order >= 4")
    if kind == "Q" and (n < 8 or n % 4):
        raise SpecError("Q:<order> needs an order divisible by 4 and >= 8")
    if kind in ("S", "A") and not 1 <= n <= MAX_PERMUTATION_DEGREE:
        raise SpecError(f"{kind}:<n> needs 1 <= n <= {MAX_PERMUTATION_DEGREE}")


def _family_order(kind: str, n: int) -> int:
    if kind in ("C", "D", "Q"):
        return n
    if kind == "S":
        return factorial(n)
    return max(1, factorial(n) // 2)


def cyclic_group(n: int, **checks) -> FiniteGroup:
    i = np.arange(n)
    mul = (i[:, None] + i[None, :]) % n
    labels = ["e", "g"] + [f"g^{p}" for p in range(2, n)]
    return FiniteGroup(mul, labels=labels[:n], origin=f"C:{n}", **checks)


def _ab_labels(r: int) -> List[str]:
    def rotation(i: int) -> str:
        return "" if i == 0 else ("a" if i == 1 else f"a^{i}")

    return ["e"] + [rotation(i) for i in range(1, r)] + [rotation(i) + "b" for i in range(r)]


def dihedral_group(order: int, **checks) -> FiniteGroup:
    """Dihedral group a^r = b^2 = 1, b^-1 a b = a^-1 with r = order/2.

    Element a^i b^j sits at index j*r + i.
    """
    r = order // 2
    idx = np.arange(order)
    i, j = idx % r, idx // r
    sign = np.where(j == 1, -1, 1)
    new_i = (i[:, None] + sign[:, None] * i[None, :]) % r
    new_j = j[:, None] ^ j[None, :]
    mul = new_j * r + new_i
    return FiniteGroup(mul, labels=_ab_labels(r), origin=f"D:{order}", **checks)


def dicyclic_group(order: int, **checks) -> FiniteGroup:
    """Dicyclic group of order 4t: a^2t = 1, b^2 = a^t, b^-1 a b = a^-1.

    Element a^i b^j sits at index j*2t + i; Q:8 is the quaternion group.
    """
    t = order // 4
    r = 2 * t
    idx = np.arange(order)
    i, j = idx % r, idx // r
    sign = np.where(j == 1, -1, 1)
    both = (j[:, None] == 1) & (j[None, :] == 1)
    new_i = (i[:, None] + sign[:, None] * i[None, :] + np.where(both, t, 0)) % r
    new_j = j[:, None] ^ j[None, :]
    mul = new_j * r + new_i
    return FiniteGroup(mul, labels=_ab_labels(r), origin=f"Q:{order}", **checks)


def symmetric_group(n: int, alternating: bool = False, **checks) -> FiniteGroup:
    """S_n or A_n with elements in lexicographic order of image tuples."""
    perms = list(permutations(range(n)))
    if alternating:
        perms = [p for p in perms if Permutation(list(p)).is_even]
    mul = permutation_table(np.asarray(perms, dtype=np.int64).reshape(len(perms), n))
    labels = [cycle_notation(p) for p in perms]
    name = "A" if alternating else "S"
    return FiniteGroup(mul, labels=labels, origin=f"{name}:{n}", **checks)


def direct_product(first: FiniteGroup, second: FiniteGroup, **checks) -> FiniteGroup:
    """G x H with (a, b) at index a*|H| + b, labelled "(a,b)"."""
    k1, k2 = first.order, second.order
    mul = first.mul[:, None, :, None] * k2 + second.mul[None, :, None, :]
    mul = mul.reshape(k1 * k2, k1 * k2)
    labels = [f"({a},{b})" for a in first.labels for b in second.labels]
    return FiniteGroup(mul, labels=labels, origin=f"{first.origin}*{second.origin}", **checks)


def build_group(
    spec: str,
    order_cap: int = DEFAULT_ORDER_CAP,
    associativity: str = "sample",
    spot_check_factor: int = 10,
) -> FiniteGroup:
    """Build a validated group from a spec string.

    Args:
        spec: Spec expression, e.g. "Q:8*S:3"
        order_cap: Largest order accepted (checked before any table is built)
        associativity: "sample" or "full" check for formula-built tables
        spot_check_factor: Triples per element in sample mode

    Returns:
        FiniteGroup whose origin is the normalised spec

    Raises:
        SpecError: Malformed spec
        OrderCapError: Order (or product order) above the cap
        TmnError / OSError: File factors that fail to load
    """
    parsed = GroupSpec.parse(spec)
    checks = {"associativity": associativity, "spot_check_factor": spot_check_factor}

    known = [_family_order(kind, int(arg)) for kind, arg in parsed.factors if kind not in ("cayley", "perm")]
    if prod(known) > order_cap:
        raise OrderCapError(f"Order {prod(known)} of {parsed.expression} exceeds cap {order_cap}")

    groups = []
    for kind, arg in parsed.factors:
        if kind in ("cayley", "perm"):
            group = read_group_file(
                Path(arg), kind=kind, order_cap=order_cap,
                associativity=associativity, spot_check_factor=spot_check_factor,
            )
        else:
            n = int(arg)
            if kind == "C":
                group = cyclic_group(n, **checks)
            elif kind == "D":
                group = dihedral_group(n, **checks)
            elif kind == "Q":
                group = dicyclic_group(n, **checks)
            else:
                group = symmetric_group(n, alternating=(kind == "A"), **checks)
        groups.append(group)

    total = prod(g.order for g in groups)
    if total > order_cap:
        raise OrderCapError(f"Order {total} of {parsed.expression} exceeds cap {order_cap}")

    result = groups[0]
    for factor in groups[1:]:
        result = direct_product(result, factor, **checks)
    logger.info(f"Built {result.origin} of order {result.order}")
    return result
