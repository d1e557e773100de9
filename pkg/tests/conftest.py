import pytest

from duperm import gf2n


@pytest.fixture(scope="session")
def f5():
    return gf2n.mk_field(1)


@pytest.fixture(scope="session")
def f10():
    return gf2n.mk_field(2)


@pytest.fixture(scope="session")
def f15():
    return gf2n.mk_field(3)
