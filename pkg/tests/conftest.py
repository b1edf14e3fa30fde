"""Pytest configuration and shared fixtures for the T(m,n) toolkit tests."""

import pytest

from src.modules.families import build_group
from src.modules.claims import load_corpus_group
from src.modules.invariants import GroupInvariants
from src.modules.obstruction import SearchBudget


@pytest.fixture(scope="session")
def budget():
    """Search budget generous enough for every corpus instance."""
    return SearchBudget(node_limit=10_000_000, time_limit_seconds=120.0)


@pytest.fixture(scope="session")
def s3():
    return build_group("S:3")


@pytest.fixture(scope="session")
def s4():
    return build_group("S:4")


@pytest.fixture(scope="session")
def a4():
    return build_group("A:4")


@pytest.fixture(scope="session")
def a5():
    return build_group("A:5")


@pytest.fixture(scope="session")
def d8():
    return build_group("D:8")


@pytest.fixture(scope="session")
def q8():
    return build_group("Q:8")


@pytest.fixture(scope="session")
def c6():
    return build_group("C:6")


@pytest.fixture(scope="session")
def q8_s3():
    return build_group("Q:8*S:3")


@pytest.fixture(scope="session")
def frobenius21():
    return load_corpus_group("fixture:frobenius21")


@pytest.fixture(scope="session")
def heisenberg27():
    return load_corpus_group("fixture:heisenberg27")


@pytest.fixture(scope="session")
def s3_inv(s3, budget):
    return GroupInvariants(s3, budget)


@pytest.fixture(scope="session")
def s4_inv(s4, budget):
    return GroupInvariants(s4, budget)


@pytest.fixture(scope="session")
def a5_inv(a5, budget):
    return GroupInvariants(a5, budget)


@pytest.fixture(scope="session")
def d8_inv(d8, budget):
    return GroupInvariants(d8, budget)


@pytest.fixture(scope="session")
def q8_inv(q8, budget):
    return GroupInvariants(q8, budget)


@pytest.fixture
def z3_cayley_text():
    """Cayley file for the cyclic group of order 3."""
    return "order 3\n0 1 2\n1 2 0\n2 0 1\nlabel 1 g\nlabel 2 g^2\n"


@pytest.fixture
def write_file(tmp_path):
    """Write text to a file under tmp_path and return its path."""

    def _write(name, text):
        path = tmp_path / name
        path.write_text(text)
        return path

    return _write
