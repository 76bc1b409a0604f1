import pytest

from qlogic.builders import boolean_algebra, hexagon_o6, mo_logic
from qlogic.core import validate_logic


@pytest.fixture(scope="session")
def booleans():
    return {k: validate_logic(boolean_algebra(k)) for k in range(1, 5)}


@pytest.fixture(scope="session")
def mo_logics():
    return {n: validate_logic(mo_logic(n)) for n in range(1, 4)}


@pytest.fixture(scope="session")
def b2(booleans):
    return booleans[2]


@pytest.fixture(scope="session")
def b3(booleans):
    return booleans[3]


@pytest.fixture(scope="session")
def mo2(mo_logics):
    return mo_logics[2]


@pytest.fixture(scope="session")
def o6_description():
    return hexagon_o6()
