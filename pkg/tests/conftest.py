from fractions import Fraction

import pytest
import sympy
from hypothesis import strategies as st

from pushout.exactla import LinMap

small_rationals = st.fractions(min_value=-4, max_value=4, max_denominator=3)


@st.composite
def matrices(draw, max_rows=4, max_cols=4, rows=None, cols=None):
    r = rows if rows is not None else draw(st.integers(0, max_rows))
    c = cols if cols is not None else draw(st.integers(0, max_cols))
    data = [[draw(small_rationals) for _ in range(c)] for _ in range(r)]
    return LinMap.from_rows(data, c)


def to_sympy(m: LinMap) -> sympy.Matrix:
    return sympy.Matrix(m.rows, m.cols, lambda i, j: sympy.Rational(m[i, j].numerator, m[i, j].denominator))


def sympy_rank(m: LinMap) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    return to_sympy(m).rank()


def sympy_nullity(m: LinMap) -> int:
    if m.cols == 0:
        return 0
    if m.rows == 0:
        return m.cols
    return len(to_sympy(m).nullspace())


def fr(*xs):
    return tuple(Fraction(x) for x in xs)


@pytest.fixture(scope="session")
def corpus_dir():
    from pushout.corpus import CORPUS_DIR

    return CORPUS_DIR
