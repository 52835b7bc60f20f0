from fractions import Fraction

import pytest

from staircase_tableaux import Params

PARAMS_GRID = (
    Params(1, 1),
    Params(0, 1),
    Params(1, 0),
    Params(Fraction(1, 2), 3),
    Params(2, Fraction(2, 3)),
)


@pytest.fixture
def unit():
    return Params(1, 1)


@pytest.fixture
def asym():
    return Params(Fraction(1, 2), 3)


@pytest.fixture
def grid():
    return PARAMS_GRID
