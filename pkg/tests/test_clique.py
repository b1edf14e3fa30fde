"""Tests for clique numbers of the non-commuting graph."""

import pytest

from src.modules.claims import corpus_entries, load_corpus_group
from src.modules.clique import (
    clique_number,
    clique_within,
    color_sort,
    element_clique_number,
    max_clique_classes,
)
from src.modules.errors import InstanceTooLargeError
from src.modules.families import build_group
from src.modules.nc_graph import build_nc_graph, twin_partition


def w_of(group):
    return clique_number(twin_partition(build_nc_graph(group), group), group)


class TestMaxCliqueClasses:
    """Test the class-level branch and bound."""

    def test_triangle_plus_pendant(self):
        """Largest clique of a triangle with a pendant vertex."""
        masks = [0b0110, 0b1101, 0b0011, 0b0010]
        assert max_clique_classes(masks) == [0, 1, 2]

    def test_allowed_subset(self):
        """Restricting the candidates."""
        masks = [0b0110, 0b1101, 0b0011, 0b0010]
        assert max_clique_classes(masks, allowed=[1, 3]) == [1, 3]
        assert max_clique_classes(masks, allowed=[]) == []

    def test_color_sort_bounds(self):
        """Colors never exceed the number of candidates and adjacent ones differ."""
        masks = [0b0110, 0b1101, 0b0011, 0b0010]
        colored = color_sort([0, 1, 2, 3], masks)
        colors = dict(colored)
        assert sorted(colors) == [0, 1, 2, 3]
        assert colors[0] != colors[1] and colors[1] != colors[2] and colors[0] != colors[2]


class TestCliqueNumber:
    """Test exact w(G)."""

    @pytest.mark.parametrize(
        "spec, w",
        [("S:3", 4), ("D:8", 3), ("Q:8", 3), ("A:4", 5), ("S:4", 10), ("D:16", 5), ("Q:16", 5)],
    )
    def test_known_values(self, spec, w):
        """Clique numbers of small groups."""
        result = w_of(build_group(spec))
        assert result.w == w
        assert result.exhausted

    def test_a5(self, a5):
        """w(A5) = 21, one element from every twin class."""
        result = w_of(a5)
        assert result.w == 21
        assert a5.noncommuting_pairs(result.witness)

    def test_fixtures(self, frobenius21, heisenberg27):
        """w = 8 for the order-21 group and 4 for the order-27 group."""
        assert w_of(frobenius21).w == 8
        assert w_of(heisenberg27).w == 4

    def test_abelian(self, c6):
        """Abelian groups have w = 1, the trivial group w = 0."""
        assert w_of(c6).w == 1
        assert w_of(c6).witness.members == (1,)
        assert w_of(build_group("C:1")).w == 0

    def test_abelian_factor_keeps_w(self):
        """w(G x A) = w(G) for abelian A."""
        assert w_of(build_group("S:4*C:2")).w == 10
        assert w_of(build_group("S:3*C:3")).w == 4

    def test_witness_is_non_commuting(self, s4):
        """The witness elements pairwise fail to commute."""
        result = w_of(s4)
        assert len(result.witness) == 10
        assert s4.noncommuting_pairs(result.witness)


class TestCliqueWithin:
    """Test w(A) for subsets."""

    def test_subsets(self, s3):
        """Transpositions pairwise fail to commute, 3-cycles commute."""
        tp = twin_partition(build_nc_graph(s3), s3)
        assert clique_within(tp, s3, [1, 2, 5]) == 3
        assert clique_within(tp, s3, [3, 4]) == 1
        assert clique_within(tp, s3, [0]) == 1
        assert clique_within(tp, s3, []) == 0


class TestElementCliqueOracle:
    """Test the networkx element-level oracle."""

    def test_agrees_on_small_corpus(self):
        """Class-level and element-level w agree for every corpus group up to order 24."""
        for entry in corpus_entries():
            group = load_corpus_group(entry.spec)
            if group.order > 24:
                continue
            assert element_clique_number(group).w == w_of(group).w, entry.name

    def test_refuses_large(self, a5):
        """Order guard."""
        with pytest.raises(InstanceTooLargeError, match="refuses order 60"):
            element_clique_number(a5)
