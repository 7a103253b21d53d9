import pytest

from cantordiff import Parameter


@pytest.fixture(scope="session")
def p5() -> Parameter:
    return Parameter(5.0)


@pytest.fixture(scope="session")
def p3() -> Parameter:
    return Parameter(3.0)
