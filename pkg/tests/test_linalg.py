from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from qrt.exactfield import GF, QQ
from qrt.linalg import (Matrix, ShapeError, cofactor_det, column_space_basis, det, interpolate, inverse, kernel_basis,
                        rank, rref, solve)

small = st.integers(min_value=-4, max_value=4)


def matrices(nr=st.integers(1, 4), nc=st.integers(1, 4)):
    return st.tuples(nr, nc).flatmap(
        lambda s: st.lists(st.lists(small, min_size=s[1], max_size=s[1]), min_size=s[0], max_size=s[0]))


square = st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n))
fields = st.sampled_from([QQ, GF(2), GF(3), GF(7)])


@given(matrices(), fields)
def test_rank_nullity(rows, F):
    m = Matrix(rows, F)
    k = kernel_basis(m)
    assert rank(m) + k.ncols == m.ncols
    assert (m @ k).is_zero() if k.ncols else True


@given(matrices())
def test_rank_matches_sympy_over_q(rows):
    assert rank(Matrix(rows, QQ)) == sympy.Matrix(rows).rank()


@given(square, fields)
def test_det_bareiss_matches_cofactor(rows, F):
    m = Matrix(rows, F)
    assert det(m) == cofactor_det(m)


@given(square)
def test_det_matches_sympy(rows):
    assert det(Matrix(rows, QQ)) == sympy.Matrix(rows).det()


@given(square, fields)
def test_inverse_when_invertible(rows, F):
    m = Matrix(rows, F)
    if det(m) == 0:
        return
    assert inverse(m) @ m == Matrix.identity(m.nrows, F)


@given(matrices(), fields, st.data())
def test_solve_consistent_systems(rows, F, data):
    a = Matrix(rows, F)
    x = Matrix([[data.draw(small)] for _ in range(a.ncols)], F)
    b = a @ x
    sol = solve(a, b)
    assert sol is not None and a @ sol == b


def test_solve_inconsistent():
    a = Matrix([[1, 1], [1, 1]], QQ)
    assert solve(a, Matrix([[0], [1]], QQ)) is None


@given(matrices(), fields)
def test_rref_idempotent_and_column_space(rows, F):
    m = Matrix(rows, F)
    r, piv = rref(m)
    assert rref(r)[0] == r
    assert len(piv) == rank(m) == column_space_basis(m).ncols


def test_rank_depends_on_field():
    rows = [[1, 1], [1, -1]]
    assert rank(Matrix(rows, QQ)) == 2
    assert rank(Matrix(rows, GF(2))) == 1


def test_shape_errors():
    with pytest.raises(ShapeError):
        Matrix([[1, 2], [3]], QQ)
    with pytest.raises(ShapeError):
        Matrix([[1, 2]], QQ) @ Matrix([[1, 2]], QQ)


@given(st.lists(st.fractions(max_denominator=9), min_size=1, max_size=5))
def test_interpolation_recovers_polynomial(coeffs):
    f = lambda t: sum(c * t ** k for k, c in enumerate(coeffs))
    pts = [(x, f(Fraction(x))) for x in range(len(coeffs))]
    poly = interpolate(pts, QQ)
    assert all(poly.coefficient(k) == c for k, c in enumerate(coeffs))
    assert poly(Fraction(17)) == f(Fraction(17))


def test_interpolation_field_too_small():
    with pytest.raises(Exception):
        interpolate([(k, 0) for k in range(4)], GF(3))
