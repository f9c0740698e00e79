from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from cohocoring.errors import DimensionMismatch, WellDefinednessViolation
from cohocoring.linalg import (QQ, Field, Matrix, induced_map, kernel_basis, make_quotient,
                               quotient_from_vectors, rank, solve_affine)


small = st.integers(min_value=-3, max_value=3)


@st.composite
def dense(draw, max_rows=6, max_cols=6):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    return [[draw(small) for _ in range(c)] for _ in range(r)]


def test_field_arithmetic():
    assert QQ("1/2") + QQ("1/3") == QQ("5/6")
    F7 = Field(7)
    assert F7(3) * F7(5) == F7(1)
    assert F7("1/2") == F7(4)
    assert F7.to_str(F7(-1)) == "6"
    with pytest.raises(ZeroDivisionError):
        F7("1/7")
    with pytest.raises(ValueError):
        Field(6)


@settings(max_examples=60, deadline=None)
@given(dense())
def test_rank_matches_sympy(grid):
    assert rank(Matrix.from_dense(QQ, grid)) == sympy.Matrix(grid).rank()


@settings(max_examples=60, deadline=None)
@given(dense())
def test_kernel_is_kernel_and_complementary(grid):
    m = Matrix.from_dense(QQ, grid)
    K = kernel_basis(m)
    assert K.rows + rank(m) == m.cols
    for v in K.row_vectors():
        assert m.apply(v) == {}
    assert rank(K) == K.rows


@settings(max_examples=40, deadline=None)
@given(dense(max_cols=5), st.lists(small, min_size=6, max_size=6))
def test_solve_affine_solutions_solve(grid, x):
    A = Matrix.from_dense(QQ, grid)
    xs = {j: QQ(v) for j, v in enumerate(x[:A.cols]) if v}
    b = A.apply(xs)
    eqs = [(row, b.get(i, 0)) for i, row in enumerate(A.row_vectors())]
    sol = solve_affine(QQ, eqs, A.cols)
    assert sol is not None
    part, kern = sol
    assert A.apply(part) == b
    assert len(kern) == A.cols - rank(A)
    # an inconsistent system: x0 = 0 and x0 = 1
    assert solve_affine(QQ, [({0: QQ.one}, 0), ({0: QQ.one}, 1)], 1) is None


def test_rank_over_fp_differs_from_q():
    grid = [[1, 1], [1, -1]]  # determinant -2
    assert rank(Matrix.from_dense(QQ, grid)) == 2
    assert rank(Matrix.from_dense(Field(2), grid)) == 1


def test_quotient_project_lift():
    # Q^3 / <e0 - e1>
    Q = quotient_from_vectors(QQ, 3, [{0: QQ(1), 1: QQ(-1)}])
    assert Q.dim == 2
    assert Q.project({0: QQ(1)}) == Q.project({1: QQ(1)})
    for q in range(Q.dim):
        assert Q.project(Q.lift({q: QQ(1)})) == {q: QQ(1)}


def test_induced_map_and_violation():
    src = make_quotient(2, Matrix.from_dense(QQ, [[1, -1]]))   # e0 ~ e1
    tgt = make_quotient(2, Matrix.from_dense(QQ, [[0, 1]]))    # e1 ~ 0
    swap = Matrix.from_dense(QQ, [[1, 1], [0, 0]])
    f = induced_map(swap, src, tgt)
    assert f.shape == (1, 1)
    bad = Matrix.identity(QQ, 2)
    with pytest.raises(WellDefinednessViolation) as e:
        induced_map(bad, src, tgt)
    assert e.value.witness["relation"] and e.value.witness["image"]


def test_dimension_checks():
    with pytest.raises(DimensionMismatch):
        Matrix.from_dense(QQ, [[1, 2], [3]])
    with pytest.raises(DimensionMismatch):
        make_quotient(3, Matrix.from_dense(QQ, [[1, 0]]))


def test_exact_rationals_survive():
    m = Matrix.from_dense(QQ, [[Fraction(1, 3), 0], [0, Fraction(2, 7)]])
    assert QQ.to_str(m[0, 0]) == "1/3"
    assert rank(m) == 2
