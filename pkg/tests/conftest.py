from fractions import Fraction

import pytest

from adoforge.catalog import abelian, filiform4, heisenberg3, heisenberg5, solvable2
from adoforge.linalg import RationalMatrix
from adoforge.reps import Representation


@pytest.fixture
def h3():
    return heisenberg3()


@pytest.fixture
def f4():
    return filiform4()


@pytest.fixture
def h5():
    return heisenberg5()


@pytest.fixture
def abelian2():
    return abelian(2)


@pytest.fixture
def solvable():
    return solvable2()


def single_entry(n, r, c, v=1):
    return RationalMatrix.from_entries(n, n, [(r, c, v)])


@pytest.fixture
def std_h3_rep(h3):
    """e0 -> E12, e1 -> E23, e2 -> E13: the faithful 3x3 strictly upper
    triangular representation of the Heisenberg algebra."""
    return Representation(
        h3,
        3,
        [single_entry(3, 0, 1), single_entry(3, 1, 2), single_entry(3, 0, 2)],
    )


def fraction_matrix(rows):
    return RationalMatrix.from_rows([[Fraction(v) for v in row] for row in rows])
