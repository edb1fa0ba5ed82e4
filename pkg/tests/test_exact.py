from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from latslice import exact as ex

small_int = st.integers(-6, 6)


def int_matrix(n, m=None):
    m = n if m is None else m
    return st.lists(st.lists(small_int, min_size=m, max_size=m), min_size=n, max_size=n)


def test_rref_solve_identity():
    assert ex.rref_solve(ex.identity(3), (1, 2, 3)) == (1, 2, 3)


def test_rref_solve_diagonal():
    assert ex.rref_solve(ex.mat([[2, 0], [0, 2]]), (1, 3)) == (Fraction(1, 2), Fraction(3, 2))


def test_rref_solve_inconsistent():
    assert ex.rref_solve(ex.mat([[1, 1], [2, 2]]), (1, 3)) is None


def test_determinant_examples():
    assert ex.determinant(ex.identity(4)) == 1
    assert ex.determinant(ex.mat([[1, 0, 0], [0, 2, 0], [0, 0, 4]])) == 8
    # basis of 2Z^3 has index 2^3 in Z^3
    assert ex.determinant(ex.mat([[2, 0, 0], [0, 2, 0], [0, 0, 2]])) == 8


def test_determinant_rejects_non_square():
    with pytest.raises(ex.ExactError):
        ex.determinant(ex.mat([[1, 2, 3], [4, 5, 6]]))


def test_determinant_rational_entries():
    M = ex.mat([[Fraction(1, 2), 1], [1, Fraction(1, 3)]])
    assert ex.determinant(M) == Fraction(1, 6) - 1


def test_hnf_small():
    M = ex.mat([[2, 1], [0, 1]])
    H, U = ex.hnf(M)
    assert ex.matmul(M, U) == H
    assert abs(ex.determinant(U)) == 1
    assert H[0][1] == 0 and H[0][0] > 0 and H[1][1] > 0


def test_hnf_identity():
    H, U = ex.hnf(ex.identity(3))
    assert H == ex.identity(3)


def test_hnf_rejects_fractions():
    with pytest.raises(ex.ExactError):
        ex.hnf(ex.mat([[Fraction(1, 2), 0], [0, 1]]))


@settings(max_examples=60, deadline=None)
@given(int_matrix(4))
def test_hnf_property(rows):
    M = ex.mat(rows)
    H, U = ex.hnf(M)
    assert ex.matmul(M, U) == H
    assert abs(ex.determinant(U)) == 1


@settings(max_examples=60, deadline=None)
@given(int_matrix(3), int_matrix(3))
def test_determinant_multiplicative(a, b):
    A, B = ex.mat(a), ex.mat(b)
    assert ex.determinant(ex.matmul(A, B)) == ex.determinant(A) * ex.determinant(B)


@settings(max_examples=60, deadline=None)
@given(int_matrix(3, 4), st.lists(small_int, min_size=3, max_size=3))
def test_rref_solve_property(rows, y):
    M = ex.mat(rows)
    x = ex.rref_solve(M, y)
    if x is not None:
        assert ex.matvec(M, x) == ex.vec(y)
    else:
        assert ex.rank(M) < ex.rank([list(r) + [v] for r, v in zip(M, y)])


@settings(max_examples=40, deadline=None)
@given(int_matrix(2, 4))
def test_integer_kernel_is_saturated(rows):
    M = ex.mat(rows)
    ker = ex.integer_kernel(M)
    assert len(ker) == 4 - ex.rank(M)
    for v in ker:
        assert all(x == 0 for x in ex.matvec(M, v))
    if ker:
        ex.complete_to_unimodular(ker)  # raises unless the kernel lattice is primitive


def test_solve_integer():
    x0, ker = ex.solve_integer(ex.mat([[2, 4]]), (6,))
    assert 2 * x0[0] + 4 * x0[1] == 6
    assert len(ker) == 1
    assert ex.solve_integer(ex.mat([[2, 4]]), (3,)) is None


def test_complete_to_unimodular():
    extra = ex.complete_to_unimodular([(1, 2, 3)])
    assert abs(ex.determinant(ex.from_columns([(1, 2, 3)] + extra))) == 1
    with pytest.raises(ex.ExactError):
        ex.complete_to_unimodular([(2, 0, 0)])


def test_primitive_and_sign():
    assert ex.primitive((4, -6, 2)) == (2, -3, 1)
    assert ex.canonical_sign((0, -1, 2)) == (0, 1, -2)


def test_lp_square():
    A = [(1, 0), (-1, 0), (0, 1), (0, -1)]
    b = [1, 1, 2, 2]
    status, val, x = ex.lp_maximize(A, b, (1, 1))
    assert status == ex.LPStatus.OPTIMAL and val == 3


def test_lp_infeasible_and_unbounded():
    assert ex.lp_maximize([(1,), (-1,)], [-1, -1], (1,))[0] == ex.LPStatus.INFEASIBLE
    assert ex.lp_maximize([(-1,)], [0], (1,))[0] == ex.LPStatus.UNBOUNDED


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(small_int, small_int), min_size=1, max_size=6), st.tuples(small_int, small_int))
def test_lp_matches_vertex_maximum(points, c):
    # maximise over conv(points) written as a box-bounded hull; compare with the vertex maximum
    from latslice import body as bd

    pts = list({tuple(p) for p in points})
    K = bd.VPolytope(pts)
    if K.affine_dim < 2:
        return
    A = [a for a, _ in K.halfspaces]
    b = [b for _, b in K.halfspaces]
    status, val, _ = ex.lp_maximize(A, b, c)
    assert status == ex.LPStatus.OPTIMAL
    assert val == max(ex.dot(c, p) for p in pts)
