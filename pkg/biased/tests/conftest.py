# biased/tests/conftest.py
import pytest

from biased.constructions import build_2Cn, build_F, identify


@pytest.fixture
def two_c3():
    return build_2Cn(3)


@pytest.fixture(scope="module")
def f4():
    return build_F(2)


@pytest.fixture(scope="module")
def f4_biased(f4):
    return identify(f4)
