"""Group File Ingestion and Export

Reads the two on-disk group formats:

Cayley file::

    order 3
    0 1 2
    1 2 0
    2 0 1
    label 1 g

Permutation file::

    degree 5
    # generators as 1-based images
    2 3 1 4 5
    2 3 4 5 1

Cayley tables are untrusted and always get the full associativity check.
Permutation closures are associative by construction.
"""

from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple
import logging

import numpy as np
from sympy.combinatorics import Permutation

from .errors import OrderCapError, ParseError, PermutationError
from .group import FiniteGroup, default_labels

logger = logging.getLogger(__name__)

DEFAULT_ORDER_CAP = 2000


def cycle_notation(images: Sequence[int]) -> str:
    """1-based cycle notation for a 0-based image tuple, "()" for the identity."""
    cycles = Permutation(list(images)).cyclic_form
    if not cycles:
        return "()"
    return "".join("(" + ",".join(str(i + 1) for i in cycle) + ")" for cycle in cycles)


def permutation_table(perms: np.ndarray) -> np.ndarray:
    """Multiplication table of a closed set of permutations.

    Product convention: (x*y)(i) = x(y(i)).

    Args:
        perms: k x d array of 0-based images, row 0 the identity

    Returns:
        k x k table of row indices
    """
    perms = np.ascontiguousarray(perms, dtype=np.int64)
    index: Dict[bytes, int] = {row.tobytes(): i for i, row in enumerate(perms)}
    k = perms.shape[0]
    mul = np.empty((k, k), dtype=np.int64)
    for x in range(k):
        composed = np.ascontiguousarray(perms[x][perms])
        try:
            mul[x] = [index[row.tobytes()] for row in composed]
        except KeyError:
            raise PermutationError("Permutation set is not closed under composition")
    return mul


def _data_lines(text: str) -> List[Tuple[int, str]]:
    lines = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append((number, line))
    return lines


def ingest_cayley(text: str, order_cap: int = DEFAULT_ORDER_CAP, origin: str = "cayley") -> FiniteGroup:
    """Parse and fully validate a Cayley file.

    Args:
        text: File contents
        order_cap: Largest accepted order
        origin: Descriptor recorded on the group

    Returns:
        Validated FiniteGroup

    Raises:
        ParseError: Malformed header, row, entry or label line
        OrderCapError: Declared order above the cap
        LatinSquareError, IdentityError, AssociativityError, LabelError: table
            validation failures
    """
    lines = _data_lines(text)
    if not lines:
        raise ParseError("Empty Cayley file")

    number, header = lines[0]
    parts = header.split()
    if len(parts) != 2 or parts[0] != "order":
        raise ParseError(f"Line {number}: expected 'order <k>'")
    try:
        k = int(parts[1])
    except ValueError:
        raise ParseError(f"Line {number}: order must be an integer")
    if k < 1:
        raise ParseError(f"Line {number}: order must be positive")
    if k > order_cap:
        raise OrderCapError(f"Order {k} exceeds cap {order_cap}")

    rows = [entry for entry in lines[1:] if not entry[1].startswith("label")]
    label_lines = [entry for entry in lines[1:] if entry[1].startswith("label")]
    if len(rows) != k:
        raise ParseError(f"Expected {k} table rows, found {len(rows)}")

    mul = np.empty((k, k), dtype=np.int64)
    for x, (number, line) in enumerate(rows):
        try:
            values = [int(v) for v in line.split()]
        except ValueError:
            raise ParseError(f"Line {number}: non-integer entry")
        if len(values) != k:
            raise ParseError(f"Line {number}: expected {k} entries, found {len(values)}")
        out_of_range = [v for v in values if not 0 <= v < k]
        if out_of_range:
            raise ParseError(f"Line {number}: index {out_of_range[0]} out of range 0..{k - 1}")
        mul[x] = values

    labels = default_labels(k)
    for number, line in label_lines:
        parts = line.split(None, 2)
        if len(parts) != 3:
            raise ParseError(f"Line {number}: expected 'label <i> <string>'")
        try:
            i = int(parts[1])
        except ValueError:
            raise ParseError(f"Line {number}: label index must be an integer")
        if not 0 <= i < k:
            raise ParseError(f"Line {number}: label index {i} out of range")
        labels[i] = parts[2].strip()

    group = FiniteGroup(mul, labels=labels, origin=origin, associativity="full")
    logger.info(f"Ingested Cayley table of order {k}")
    return group


def parse_permutations(text: str) -> Tuple[int, List[Tuple[int, ...]]]:
    """Parse a permutation file into (degree, 0-based generator images).

    Raises:
        ParseError: Missing or malformed degree line, non-integer images
        PermutationError: A generator is not a permutation of 1..d
    """
    lines = _data_lines(text)
    if not lines:
        raise ParseError("Empty permutation file")

    number, header = lines[0]
    parts = header.split()
    if len(parts) != 2 or parts[0] != "degree":
        raise ParseError(f"Line {number}: expected 'degree <d>'")
    try:
        degree = int(parts[1])
    except ValueError:
        raise ParseError(f"Line {number}: degree must be an integer")
    if degree < 1:
        raise ParseError(f"Line {number}: degree must be positive")

    generators = []
    for number, line in lines[1:]:
        try:
            images = [int(v) for v in line.split()]
        except ValueError:
            raise ParseError(f"Line {number}: non-integer image")
        if len(images) != degree:
            raise PermutationError(f"Line {number}: expected {degree} images, found {len(images)}")
        if sorted(images) != list(range(1, degree + 1)):
            raise PermutationError(f"Line {number}: not a permutation of 1..{degree}")
        generators.append(tuple(i - 1 for i in images))
    return degree, generators


def ingest_permutations(
    text: str,
    order_cap: int = DEFAULT_ORDER_CAP,
    origin: str = "perm",
    associativity: str = "sample",
    spot_check_factor: int = 10,
) -> FiniteGroup:
    """Close a generator set under composition and build its table.

    Elements are enumerated breadth-first from the identity by right
    multiplication with generators; each new level is sorted
    lexicographically by image tuple.

    Args:
        text: Permutation file contents
        order_cap: Closure aborts once it exceeds this many elements
        origin: Descriptor recorded on the group
        associativity: Check mode passed to FiniteGroup
        spot_check_factor: Triples per element in sample mode

    Returns:
        Validated FiniteGroup labelled in cycle notation

    Raises:
        ParseError, PermutationError: Malformed file
        OrderCapError: Closure exceeds order_cap
    """
    degree, generators = parse_permutations(text)
    gens = [np.asarray(g, dtype=np.int64) for g in generators]

    identity = tuple(range(degree))
    elements: List[Tuple[int, ...]] = [identity]
    seen = {identity}
    level = [identity]
    while level:
        fresh = set()
        for x in level:
            x_arr = np.asarray(x, dtype=np.int64)
            for g in gens:
                product = tuple(int(v) for v in x_arr[g])
                if product not in seen:
                    seen.add(product)
                    fresh.add(product)
        if len(seen) > order_cap:
            raise OrderCapError(f"Closure exceeds order cap {order_cap}")
        level = sorted(fresh)
        elements.extend(level)

    perms = np.asarray(elements, dtype=np.int64).reshape(len(elements), degree)
    mul = permutation_table(perms)
    labels = [cycle_notation(p) for p in elements]
    group = FiniteGroup(
        mul,
        labels=labels,
        origin=origin,
        associativity=associativity,
        spot_check_factor=spot_check_factor,
    )
    logger.info(f"Closed {len(generators)} generators of degree {degree} into order {group.order}")
    return group


def detect_format(text: str) -> Optional[str]:
    """Return "cayley", "perm" or None from the first data line."""
    lines = _data_lines(text)
    if not lines:
        return None
    keyword = lines[0][1].split()[0]
    return {"order": "cayley", "degree": "perm"}.get(keyword)


def read_group_file(
    path: Path,
    kind: Optional[str] = None,
    order_cap: int = DEFAULT_ORDER_CAP,
    associativity: str = "sample",
    spot_check_factor: int = 10,
) -> FiniteGroup:
    """Read a Cayley or permutation file from disk.

    Args:
        path: File path
        kind: "cayley", "perm" or None to detect from the header
        order_cap: Largest accepted order
        associativity: Check mode for permutation closures
        spot_check_factor: Triples per element in sample mode

    Raises:
        OSError: File cannot be read
        ParseError: Unrecognised header
    """
    path = Path(path)
    text = path.read_text()
    kind = kind or detect_format(text)
    if kind == "cayley":
        return ingest_cayley(text, order_cap=order_cap, origin=f"cayley:{path}")
    if kind == "perm":
        return ingest_permutations(
            text,
            order_cap=order_cap,
            origin=f"perm:{path}",
            associativity=associativity,
            spot_check_factor=spot_check_factor,
        )
    raise ParseError(f"{path}: first line must be 'order <k>' or 'degree <d>'")


def export_cayley(group: FiniteGroup) -> str:
    """Cayley file text that ingest_cayley reads back to the same table and labels."""
    lines = [f"order {group.order}"]
    lines.extend(" ".join(str(v) for v in row) for row in group.mul.tolist())
    lines.extend(f"label {i} {label}" for i, label in enumerate(group.labels))
    return "\n".join(lines) + "\n"
