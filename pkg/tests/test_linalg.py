from fractions import Fraction

import sympy
from hypothesis import given
from hypothesis import strategies as st

from mzvoa import linalg

small = st.integers(-3, 3)
matrices = st.integers(1, 5).flatmap(
    lambda r: st.lists(st.lists(small, min_size=r, max_size=r), min_size=1, max_size=5))


def columns_of(rows):
    ncols = len(rows[0])
    return [{i: Fraction(rows[i][j]) for i in range(len(rows)) if rows[i][j]} for j in range(ncols)]


@given(matrices)
def test_rank_matches_sympy(rows):
    assert linalg.rank(columns_of(rows)) == sympy.Matrix(rows).rank()


@given(matrices)
def test_nullspace_dimension_and_kernel(rows):
    cols = columns_of(rows)
    kernel = linalg.nullspace(cols)
    assert len(kernel) == len(cols) - sympy.Matrix(rows).rank()
    M = sympy.Matrix(rows)
    for k in kernel:
        assert M * sympy.Matrix([sympy.Rational(c.numerator, c.denominator) for c in k]) == sympy.zeros(len(rows), 1)


@given(matrices, st.lists(small, min_size=5, max_size=5))
def test_solve_agrees_with_sympy_feasibility(rows, rhs):
    rhs = rhs[: len(rows)]
    cols = columns_of(rows)
    target = {i: Fraction(c) for i, c in enumerate(rhs) if c}
    x = linalg.solve(cols, target)
    M, b = sympy.Matrix(rows), sympy.Matrix(rhs)
    feasible = M.rank() == M.row_join(b).rank()
    assert (x is not None) == feasible
    if x is not None:
        got = [sum(cols[j].get(i, 0) * x[j] for j in range(len(cols))) for i in range(len(rows))]
        assert got == [Fraction(c) for c in rhs]


def test_echelon_membership():
    e = linalg.Echelon([{"a": 1, "b": 1}, {"b": 2}])
    assert e.contains({"a": 5})
    assert not e.contains({"c": 1})
    assert not e.add({"a": 1, "b": -3})
    assert len(e) == 2


def test_inverse():
    m = [[2, 1], [1, 1]]
    inv = linalg.inverse(m)
    assert inv == [[1, -1], [-1, 2]]
    try:
        linalg.inverse([[1, 2], [2, 4]])
    except ValueError:
        pass
    else:
        raise AssertionError("singular matrix accepted")
