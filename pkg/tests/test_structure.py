"""Tests for quotients, series and Sylow subgroups."""

import pytest

from src.modules.errors import NotNormalError, NotSubgroupError, SpecError
from src.modules.families import build_group
from src.modules.structure import (
    derived_series,
    is_nilpotent,
    normal_subgroups_for_checks,
    prime_divisors,
    quotient,
    subgroup_table,
    sylow_count,
    upper_central_series,
)


class TestDerivedSeries:
    """Test derived series and solvability."""

    def test_s4(self, s4):
        """S4 > A4 > V4 > 1."""
        series = derived_series(s4)
        assert series.orders == [24, 12, 4, 1]
        assert series.solvable
        assert series.derived_length == 3

    def test_s3(self, s3):
        """S3 has derived length 2."""
        assert derived_series(s3).derived_length == 2

    def test_abelian(self, c6):
        """Nontrivial abelian groups have derived length 1."""
        assert derived_series(c6).derived_length == 1
        assert derived_series(build_group("C:1")).derived_length == 0

    def test_a5_not_solvable(self, a5):
        """A5 is perfect."""
        series = derived_series(a5)
        assert not series.solvable
        assert series.derived_length is None
        assert series.orders == [60]


class TestCentralSeries:
    """Test the upper central series and nilpotency."""

    def test_q8(self, q8):
        """Q8 is nilpotent of class 2."""
        series = upper_central_series(q8)
        assert series.orders == [1, 2, 8]
        assert series.nilpotent

    def test_s3(self, s3):
        """S3 has trivial center so the series stops at once."""
        nilpotent, series = is_nilpotent(s3)
        assert not nilpotent
        assert series.orders == [1]

    def test_heisenberg(self, heisenberg27):
        """The order-27 fixture is nilpotent."""
        assert is_nilpotent(heisenberg27)[0]


class TestQuotient:
    """Test quotient construction."""

    def test_q8_mod_center(self, q8):
        """Q8 / Z is the Klein four-group."""
        q = quotient(q8, q8.center())
        assert q.group.order == 4
        assert q.group.is_abelian
        assert q.representatives == [0, 1, 4, 5]
        assert q.projection.tolist() == [0, 1, 0, 1, 2, 3, 2, 3]

    def test_s4_mod_klein(self, s4):
        """S4 / V4 is S3."""
        klein = derived_series(s4).terms[2]
        q = quotient(s4, klein)
        assert q.group.order == 6
        assert not q.group.is_abelian

    def test_not_normal(self, s3):
        """Quotients need a normal subgroup."""
        with pytest.raises(NotNormalError):
            quotient(s3, s3.element_set([0, 2]))


class TestSubgroupTable:
    """Test subgroups taken as groups in their own right."""

    def test_alternating_inside_symmetric(self, s4):
        """The derived subgroup of S4 is a group of order 12 with A4 labels."""
        h = subgroup_table(s4, derived_series(s4).terms[1])
        assert h.order == 12
        assert h.labels[0] == "()"
        assert len(h.center()) == 1
        assert not h.is_abelian

    def test_not_closed(self, s3):
        """A set that is not closed is refused."""
        with pytest.raises(NotSubgroupError):
            subgroup_table(s3, s3.element_set([0, s3.index_of("(1,2)"), s3.index_of("(1,3)")]))


class TestSylow:
    """Test Sylow counting."""

    def test_a5(self, a5):
        """A5 has 5, 10 and 6 Sylow subgroups, all meeting trivially."""
        for p, count in ((2, 5), (3, 10), (5, 6)):
            data = sylow_count(a5, p)
            assert data.count == count
            assert data.trivial_intersection
            assert len(data.subgroup) == {2: 4, 3: 3, 5: 5}[p]

    def test_s4(self, s4):
        """Sylow 2-subgroups of S4 share the Klein four-group."""
        two = sylow_count(s4, 2)
        assert two.count == 3
        assert len(two.subgroup) == 8
        assert not two.trivial_intersection
        assert sylow_count(s4, 3).count == 4

    def test_not_a_divisor(self, s3):
        """p must divide |G|."""
        with pytest.raises(SpecError, match="not a prime divisor"):
            sylow_count(s3, 5)
        with pytest.raises(SpecError):
            sylow_count(s3, 6)

    def test_prime_divisors(self):
        """Prime divisors in increasing order."""
        assert prime_divisors(60) == [2, 3, 5]
        assert prime_divisors(1) == []


class TestNormalSubgroups:
    """Test normal subgroup discovery."""

    def test_s4(self, s4):
        """V4 and A4, smallest first."""
        found = normal_subgroups_for_checks(s4)
        assert [len(n) for n in found] == [4, 12]

    def test_a5(self, a5):
        """A5 is simple."""
        assert normal_subgroups_for_checks(a5) == []

    def test_frobenius(self, frobenius21):
        """The normal Sylow 7-subgroup of the order-21 group is found."""
        assert [len(n) for n in normal_subgroups_for_checks(frobenius21)] == [7]
