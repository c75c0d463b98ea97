import pytest

from modular_g2.fields import PrimeField, RationalFunctionField


@pytest.fixture(scope="session")
def gf2():
    return PrimeField(2)


@pytest.fixture(scope="session")
def gf3():
    return PrimeField(3)


@pytest.fixture(scope="session")
def gf7():
    return PrimeField(7)


@pytest.fixture(scope="session")
def gf2t():
    return RationalFunctionField(2)


@pytest.fixture(scope="session")
def gf7t():
    return RationalFunctionField(7)
