"""Tests for N(m) spectra."""

import pytest

from src.modules.claims import corpus_entries, load_corpus_group
from src.modules.invariants import GroupInvariants
from src.modules.obstruction import SearchBudget, verify_certificate
from src.modules.spectrum import (
    AREA_BOUND,
    CLIQUE_BOUND,
    EXHAUSTED,
    UNKNOWN_BOUND,
    n_of,
    spectrum,
)


class TestSpectrum:
    """Test spectrum rows and their proofs."""

    def test_s3(self, s3_inv):
        """N = 2, 1, 1, 0 for m = 2..5."""
        rows = s3_inv.spectrum
        assert [(r.m, r.N) for r in rows] == [(2, 2), (3, 1), (4, 1), (5, 0)]
        assert [r.upper_proof for r in rows] == [AREA_BOUND, AREA_BOUND, AREA_BOUND, CLIQUE_BOUND]
        assert s3_inv.spectrum_complete

    def test_d8(self, d8_inv):
        """N(2) = 2 needs an exhausted search at n = 3."""
        rows = d8_inv.spectrum
        assert [(r.m, r.N) for r in rows] == [(2, 2), (3, 2), (4, 0)]
        assert rows[0].upper_proof == EXHAUSTED

    def test_heisenberg(self, heisenberg27, budget):
        """Four classes of six: N = 12, 6, 6, then 0."""
        from src.modules.invariants import GroupInvariants

        inv = GroupInvariants(heisenberg27, budget)
        assert [(r.m, r.N) for r in inv.spectrum] == [(2, 12), (3, 6), (4, 6), (5, 0)]

    def test_s4(self, s4_inv):
        """S4 rows at the memberships it is known for."""
        assert s4_inv.N(2) == 10
        assert s4_inv.N(6) == 2
        assert s4_inv.N(10) == 2
        assert s4_inv.N(11) == 0
        for m, n in ((14, 1), (11, 2), (6, 3), (4, 5), (3, 7)):
            assert s4_inv.N(m) < n

    def test_witnesses_verify(self, s4_inv):
        """Each row's witness is an (m, N(m))-obstruction."""
        for row in s4_inv.spectrum:
            if row.N:
                assert verify_certificate(s4_inv.group, row.witness, row.m, row.N).valid
            else:
                assert row.witness is None

    def test_non_increasing(self, a5_inv):
        """N(m) never increases with m."""
        values = [r.N for r in a5_inv.spectrum]
        assert values == sorted(values, reverse=True)
        assert a5_inv.N(21) == 2
        assert a5_inv.N(22) == 0

    def test_m_max(self, s4_inv):
        """Rows stop at m_max."""
        rows = spectrum(s4_inv.group, s4_inv.partition, s4_inv.w, m_max=4)
        assert [r.m for r in rows] == [2, 3, 4]

    def test_budget_marks_unknown(self, q8_s3):
        """A tiny node budget leaves rows undecided instead of failing."""
        from src.modules.nc_graph import build_nc_graph, twin_partition

        tp = twin_partition(build_nc_graph(q8_s3), q8_s3)
        rows = spectrum(q8_s3, tp, 12, m_max=2, budget=SearchBudget(node_limit=1))
        assert rows[0].unknown
        assert rows[0].upper_proof == UNKNOWN_BOUND

    def test_to_dict(self, s3_inv):
        """Rows serialise with labelled witnesses."""
        row = s3_inv.spectrum[0].to_dict(s3_inv.group)
        assert sorted(row) == ["N", "m", "unknown", "upper_proof", "witness"]
        assert len(row["witness"]) == 2


class TestNOf:
    """Test row lookup."""

    def test_lookup(self, s3_inv):
        """Present rows, zero past the clique bound, None before the first row."""
        rows = s3_inv.spectrum
        assert n_of(rows, 3) == 1
        assert n_of(rows, 9) == 0
        assert n_of(rows, 1) is None


CHECKED_CORPUS = [e for e in corpus_entries() if e.run_checks]


class TestWitnessMonotonicity:
    """Test that every spectrum witness stays an obstruction when cut down."""

    @pytest.mark.parametrize("entry", CHECKED_CORPUS, ids=[e.name for e in CHECKED_CORPUS])
    def test_shrink_and_drop_part(self, entry, budget):
        """A (m,N) witness with m >= 3, N >= 2 gives (m-1,N) and (m,N-1) obstructions."""
        inv = GroupInvariants(load_corpus_group(entry.spec), budget)
        assert inv.spectrum_complete
        for row in inv.spectrum:
            if row.m < 3 or row.N < 2:
                continue
            assert verify_certificate(inv.group, row.witness, row.m, row.N).valid
            dropped = row.witness.drop_part()
            assert verify_certificate(inv.group, dropped, row.m - 1, row.N).valid, (entry.name, row.m)
            shrunk = row.witness.shrink()
            assert verify_certificate(inv.group, shrunk, row.m, row.N - 1).valid, (entry.name, row.m)
