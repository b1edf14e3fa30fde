"""Error Categories

Every user-facing failure carries a short machine-readable category so the
command-line front end can print ``error:<category>: <message>`` and choose an
exit code without string matching.
"""

from typing import Optional, Tuple


class TmnError(ValueError):
    """Base class for invalid input: bad specs, files, or parameters."""

    category = "input"


class SpecError(TmnError):
    """Malformed group spec or out-of-range parameter."""

    category = "spec"


class OrderCapError(TmnError):
    """Group order exceeds the configured cap."""

    category = "order-cap"


class ParseError(TmnError):
    """File contents do not follow the Cayley or permutation format."""

    category = "parse"


class LatinSquareError(TmnError):
    """Multiplication table row or column repeats an entry."""

    category = "latin-square"


class IdentityError(TmnError):
    """Index 0 does not act as the identity."""

    category = "identity"


class AssociativityError(TmnError):
    """Table fails (xy)z = x(yz) for some triple."""

    category = "associativity"

    def __init__(self, message: str, triple: Optional[Tuple[int, int, int]] = None):
        super().__init__(message)
        self.triple = triple


class LabelError(TmnError):
    """Element labels missing, duplicated, or out of range."""

    category = "labels"


class PermutationError(TmnError):
    """Generator is not a permutation of the declared degree."""

    category = "permutation"


class NotSubgroupError(TmnError):
    """Element set is not closed under the group law."""

    category = "not-subgroup"


class NotNormalError(TmnError):
    """Subgroup is not normal; carries the conjugation witness."""

    category = "not-normal"

    def __init__(self, message: str, witness: Optional[Tuple[int, int]] = None):
        super().__init__(message)
        self.witness = witness


class InstanceTooLargeError(TmnError):
    """Brute-force oracle refused an instance above its size guard."""

    category = "instance-too-large"


class BudgetExceeded(TmnError):
    """Search ran out of nodes or wall-clock time."""

    category = "budget"

    def __init__(self, message: str, nodes: int = 0):
        super().__init__(message)
        self.nodes = nodes


class InvariantViolation(RuntimeError):
    """A computed structure broke one of its own invariants (a bug)."""

    category = "invariant"
