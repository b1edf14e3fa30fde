"""Tests for Cayley / permutation file ingestion and export."""

import numpy as np
import pytest

from src.modules.claims import corpus_entries, load_corpus_group
from src.modules.errors import (
    AssociativityError,
    LatinSquareError,
    OrderCapError,
    ParseError,
    PermutationError,
)
from src.modules.ingest import (
    cycle_notation,
    detect_format,
    export_cayley,
    ingest_cayley,
    ingest_permutations,
    read_group_file,
)
from tests.test_group import SELF_INVERSE_LOOP


def loop_cayley_text():
    rows = "\n".join(" ".join(str(v) for v in row) for row in SELF_INVERSE_LOOP)
    return f"order 5\n{rows}\n"


class TestCycleNotation:
    """Test 1-based cycle labels."""

    def test_identity(self):
        """The identity is '()'."""
        assert cycle_notation((0, 1, 2)) == "()"

    def test_cycles(self):
        """Disjoint cycles are concatenated."""
        assert cycle_notation((1, 0, 3, 2)) == "(1,2)(3,4)"
        assert cycle_notation((1, 2, 0)) == "(1,2,3)"


class TestIngestCayley:
    """Test Cayley file parsing."""

    def test_valid(self, z3_cayley_text):
        """Labels and table are read."""
        group = ingest_cayley(z3_cayley_text)
        assert group.order == 3
        assert group.labels == ("e", "g", "g^2")
        assert group.is_abelian

    def test_comments_ignored(self, z3_cayley_text):
        """'#' starts a comment."""
        group = ingest_cayley("# cyclic\n" + z3_cayley_text.replace("0 1 2\n", "0 1 2  # identity row\n", 1))
        assert group.order == 3

    def test_bad_header(self):
        """First data line must declare the order."""
        with pytest.raises(ParseError, match="expected 'order <k>'"):
            ingest_cayley("size 3\n")

    def test_wrong_row_count(self):
        """Exactly k rows."""
        with pytest.raises(ParseError, match="Expected 2 table rows, found 1"):
            ingest_cayley("order 2\n0 1\n")

    def test_non_integer(self):
        """Entries must be integers."""
        with pytest.raises(ParseError, match="Line 3: non-integer entry"):
            ingest_cayley("order 2\n0 1\n1 x\n")

    def test_out_of_range(self):
        """Entries must be indices."""
        with pytest.raises(ParseError, match="index 2 out of range"):
            ingest_cayley("order 2\n0 1\n1 2\n")

    def test_order_cap(self):
        """Declared order is checked against the cap."""
        with pytest.raises(OrderCapError):
            ingest_cayley("order 50\n", order_cap=10)

    def test_duplicate_in_row(self):
        """Latin square violation."""
        with pytest.raises(LatinSquareError, match="Row 1"):
            ingest_cayley("order 3\n0 1 2\n1 1 0\n2 0 1\n")

    def test_associativity_always_full(self):
        """Untrusted tables get the full associativity check."""
        with pytest.raises(AssociativityError, match="triple"):
            ingest_cayley(loop_cayley_text())


class TestIngestPermutations:
    """Test permutation generator closure."""

    def test_s3(self):
        """Two generators close to S3 with the identity first."""
        group = ingest_permutations("degree 3\n2 1 3\n2 3 1\n")
        assert group.order == 6
        assert group.labels[0] == "()"
        assert not group.is_abelian

    def test_not_a_permutation(self):
        """Images must be a permutation of 1..d."""
        with pytest.raises(PermutationError, match="not a permutation"):
            ingest_permutations("degree 3\n1 1 3\n")

    def test_wrong_length(self):
        """One image per point."""
        with pytest.raises(PermutationError, match="expected 3 images"):
            ingest_permutations("degree 3\n1 2\n")

    def test_closure_cap(self):
        """Closure stops once it passes the cap."""
        with pytest.raises(OrderCapError, match="order cap 10"):
            ingest_permutations("degree 5\n2 3 4 5 1\n2 1 3 4 5\n", order_cap=10)

    def test_fixtures(self, frobenius21, heisenberg27):
        """Fixture files build the order-21 and order-27 groups."""
        assert frobenius21.order == 21
        assert frobenius21.center().members == (0,)
        assert heisenberg27.order == 27
        assert len(heisenberg27.center()) == 3
        assert set(heisenberg27.element_orders.tolist()) == {1, 3}


class TestFiles:
    """Test format detection, file reading and export."""

    def test_detect_format(self, z3_cayley_text):
        """The header decides the format."""
        assert detect_format(z3_cayley_text) == "cayley"
        assert detect_format("# x\ndegree 4\n") == "perm"
        assert detect_format("hello\n") is None

    def test_read_group_file(self, write_file, z3_cayley_text):
        """Files are read and their origin recorded."""
        path = write_file("z3.cayley", z3_cayley_text)
        group = read_group_file(path)
        assert group.order == 3
        assert group.origin == f"cayley:{path}"

    def test_read_unknown_format(self, write_file):
        """Unrecognised headers are parse errors."""
        path = write_file("junk.txt", "hello\n")
        with pytest.raises(ParseError, match="first line"):
            read_group_file(path)

    def test_missing_file(self, tmp_path):
        """Missing files surface as OSError."""
        with pytest.raises(OSError):
            read_group_file(tmp_path / "missing.cayley")

    def test_export_round_trip_corpus(self):
        """Exported tables read back identically for every corpus group up to order 60."""
        for entry in corpus_entries():
            group = load_corpus_group(entry.spec)
            if group.order > 60:
                continue
            again = ingest_cayley(export_cayley(group))
            assert np.array_equal(again.mul, group.mul), entry.name
            assert again.labels == group.labels, entry.name
