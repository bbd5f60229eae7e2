import pytest

from semitree import BooleanSubsets, Classical, MaxTimes, SquareMatrix

THIRD = 1 / 3


@pytest.fixture
def boolean():
    return BooleanSubsets(("σ1", "σ2"))


@pytest.fixture
def a1(boolean):
    s1, s2, U = boolean.subset("σ1"), boolean.subset("σ2"), boolean.one
    return SquareMatrix(boolean, [[U, s1, 0], [s1, U, s2], [0, s2, U]])


@pytest.fixture
def a2(boolean):
    s1, s2, U = boolean.subset("σ1"), boolean.subset("σ2"), boolean.one
    return SquareMatrix(boolean, [[U, U, 0], [s1, U, s2], [0, s2, U]])


@pytest.fixture
def classical3():
    return SquareMatrix(Classical(), [[0, 0.5, 0.5], [THIRD, THIRD, THIRD], [0.25, 0.25, 0.5]])


@pytest.fixture
def maxtimes3():
    # zero diagonal stands for "no loop"
    return SquareMatrix(MaxTimes(), [[0, 2, 1], [3, 0, 0], [0, 5, 0]])
