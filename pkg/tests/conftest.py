"""Global fixtures for pyidpda tests."""

import pytest

from pyidpda.alphabet import well_nested_strings
from pyidpda.determinize import determinize
from pyidpda.witness import build_A, build_B, build_B12, build_Bns


@pytest.fixture(name="a2", scope="session")
def a2_fixture():
    """A_2, the two-state witness for the state bound."""
    return build_A(2)


@pytest.fixture(name="b2", scope="session")
def b2_fixture():
    return build_B(2)


@pytest.fixture(name="b22", scope="session")
def b22_fixture():
    return build_Bns(2, 2)


@pytest.fixture(name="b12", scope="session")
def b12_fixture():
    return build_B12()


@pytest.fixture(name="det_a2", scope="session")
def det_a2_fixture(a2):
    """Determinization of A_2 with its labels."""
    return determinize(a2)


@pytest.fixture(name="det_b2", scope="session")
def det_b2_fixture(b2):
    return determinize(b2)


# Every well-nested string over A_2's alphabet up to length 8.
@pytest.fixture(name="a2_strings", scope="session")
def a2_strings_fixture(a2):
    return list(well_nested_strings(a2.alphabet, 8))
