from fractions import Fraction

import pytest

from fockboundary.fock import WeightVector


@pytest.fixture(scope="session")
def w13():
    return WeightVector([Fraction(1, 3), Fraction(2, 3)])


@pytest.fixture(scope="session")
def w_half():
    return WeightVector([Fraction(1, 2), Fraction(1, 2)])


@pytest.fixture(scope="session")
def w3():
    return WeightVector([Fraction(1, 2), Fraction(1, 3), Fraction(1, 6)])
