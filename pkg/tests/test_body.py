from __future__ import annotations

import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from latslice import body as bd
from latslice import counting as ct
from latslice import exact as ex
from latslice.harness import families as fm


def vset(K):
    return set(K.vertices)


# -- support and gauge ------------------------------------------------------


def test_support_examples():
    assert bd.support(fm.cube(3), (1, 0, 0)) == 1
    assert bd.support(fm.simplex_T(3), (0, 1, 0)) == 3
    assert bd.support(fm.double_pyramid(5, 3), (0, 0, 1)) == 5


def test_support_of_h_polytope_uses_lp():
    K = bd.HPolytope([(1, 0), (-1, 0), (0, 1), (0, -1), (1, 1)], [1, 1, 1, 1, 1])
    assert K.support((1, 1)) == 1
    assert K.support((1, -1)) == 2


def test_unbounded_h_polytope_rejected():
    with pytest.raises(bd.BodyError):
        bd.HPolytope([(1, 0), (-1, 0), (0, 1)], [1, 1, 1])


def test_gauge_examples():
    assert bd.gauge(fm.cube(3), (1, 1, 1)) == 1
    assert bd.gauge(fm.cross_polytope(2), (1, 1)) == 2
    assert bd.gauge(fm.cross_h(4), (0, 1)) == Fraction(1, 4)


def test_gauge_needs_interior_origin():
    with pytest.raises(bd.BodyError):
        bd.gauge(fm.simplex_T(2), (1, 0, 0))


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6), st.lists(st.integers(-5, 5), min_size=3, max_size=3))
def test_gauge_support_duality(seed, x):
    K = fm.random_symmetric(3, 4, 3, seed=seed)
    if not K.is_full_dimensional:
        return
    assert bd.gauge(bd.polar(K), x) == bd.support(K, x)


# -- polar and conversions ---------------------------------------------------


def test_polar_cube_is_cross_polytope():
    assert bd.same_body(bd.polar(fm.cube(3)), fm.cross_polytope(3))


def test_polar_ball_is_ball():
    B = bd.Ball(1, 3)
    P = bd.polar(B)
    for x in [(1, 0, 0), (0, 1, 1), (Fraction(1, 2), Fraction(1, 2), 0)]:
        assert P.contains(x) == B.contains(x)


def test_polar_double_pyramid_boundary_point():
    P = bd.polar(fm.double_pyramid(5, 3))
    # a prism over a diamond: e3/h is the centre of its top facet, not a vertex
    assert bd.gauge(P, (0, 0, Fraction(1, 5))) == 1
    expected = {(a, b, c) for a, b in ((1, 0), (-1, 0), (0, 1), (0, -1)) for c in (Fraction(1, 5), Fraction(-1, 5))}
    assert vset(P) == expected


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6), st.integers(2, 4))
def test_polar_involution(seed, n):
    K = fm.random_symmetric(n, 4, 3, seed=seed)
    if not K.is_full_dimensional:
        return
    assert bd.same_body(bd.polar(bd.polar(K)), K)


def test_square_conversions():
    H = bd.v_to_h(fm.cube(2))
    assert len(H.halfspaces) == 4
    V = bd.h_to_v(bd.HPolytope([(1, 0), (-1, 0), (0, 1), (0, -1)], [1, 1, 1, 1]))
    assert vset(V) == vset(fm.cube(2))


def test_simplex_has_four_facets():
    assert len(bd.v_to_h(fm.simplex_T(7)).halfspaces) == 4


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 10**6))
def test_round_trip_4d(seed):
    K = fm.random_symmetric(4, 5, 3, seed=seed)
    H = bd.v_to_h(K)
    V = bd.h_to_v(bd.HPolytope([a for a, _ in H.halfspaces], [b for _, b in H.halfspaces], check_bounded=False))
    assert vset(V) == vset(K)


def test_dimension_cap():
    bd.set_dim_cap(3)
    try:
        with pytest.raises(bd.DimensionCapError):
            bd.v_to_h(fm.cube(4))
    finally:
        bd.set_dim_cap(6)


def test_redundant_points_canonicalized():
    K = bd.VPolytope([(0, 0), (2, 0), (0, 2), (1, 1), (Fraction(1, 2), Fraction(1, 2))])
    assert vset(K) == {(0, 0), (2, 0), (0, 2)}


def test_symmetry_tags():
    assert fm.cube(3).is_unconditional
    assert fm.slab(3).is_origin_symmetric and not fm.slab(3).is_unconditional
    assert not fm.simplex_T(2).is_origin_symmetric


# -- difference body and linear images --------------------------------------


def test_difference_body_unit_cube():
    K = fm.box([0, 0, 0], [1, 1, 1])
    assert bd.same_body(bd.difference_body(K), fm.cube(3))


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10**6))
def test_difference_body_of_symmetric_is_double(seed):
    K = fm.random_symmetric(3, 4, 3, seed=seed)
    twice = bd.linear_image(K, [[2, 0, 0], [0, 2, 0], [0, 0, 2]])
    assert bd.same_body(bd.difference_body(K), twice)


def test_difference_body_of_simplex_contains_triangle():
    k = 6
    D = bd.difference_body(fm.simplex_T(k))
    for p in [(0, 0, 0), (0, Fraction(k, 2), 0), (0, 0, k)]:
        assert D.contains(p)


def test_difference_body_rejects_ball():
    with pytest.raises(bd.BodyError):
        bd.difference_body(bd.Ball(1, 2))


def test_linear_image_examples():
    K = fm.cube(2)
    assert bd.same_body(bd.linear_image(K, ex.identity(2)), K)
    assert bd.same_body(bd.linear_image(K, [[3, 0], [0, 3]]), fm.cube(2, 3))
    with pytest.raises(bd.BodyError):
        bd.linear_image(K, [[1, 1], [1, 1]])


def test_translated_long_box():
    n, k = 3, 4
    half = Fraction(1, 2)
    Qt = bd.translate(fm.long_box(k, n), (half,) * n)
    assert ct.count_points(Qt) == 2 ** (n - 1) * 2 * k


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10**6), st.lists(st.integers(-3, 3), min_size=4, max_size=4))
def test_volume_scales_with_determinant(seed, a):
    A = [a[:2], a[2:]]
    if ex.determinant(A) == 0:
        return
    K = fm.random_polygon(5, 4, seed=seed)
    image = bd.linear_image(K, A, (Fraction(1, 3), 2))
    assert bd.volume(image) == abs(ex.determinant(A)) * bd.volume(K)


# -- slices and projections -------------------------------------------------


def test_slice_cube():
    S = bd.slice(fm.cube(3), (0, 0, 1), 0)
    assert S.dim == 2
    assert bd.same_body(bd.h_to_v(S), fm.cube(2))


def test_slice_simplex():
    k = 5
    S = bd.slice(fm.simplex_T(k), (1, 0, 0), 0)
    assert ct.count_points(S) == k + 1


def test_slice_binary_normal_only_origin():
    for n in (3, 4):
        S = bd.slice(fm.cube(n), fm.binary_normal(n), 0)
        assert ct.integer_points(S) == [(0,) * (n - 1)]


def test_slice_nonprimitive_normal_warns():
    with pytest.warns(UserWarning):
        S = bd.slice(fm.cube(3), (0, 0, 2), 1)
    assert isinstance(S, bd.EmptyBody)
    with pytest.warns(UserWarning):
        S = bd.slice(fm.cube(3), (0, 0, 2), 2)
    assert ct.count_points(S) == 9


def test_slice_of_ball():
    S = bd.slice(bd.Ball(25, 2), (0, 1), 3)
    assert ct.count_points(S) == 9


def test_project_cube():
    P = bd.project(fm.cube(3), (0, 0, 1))
    assert bd.same_body(P, fm.cube(2))


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10**6), st.integers(0, 2))
def test_unconditional_projection_equals_section(seed, i):
    K = fm.random_unconditional(3, 2, 3, seed=seed)
    e = fm.unit(3, i)
    assert bd.same_body(bd.project(K, e), bd.h_to_v(bd.slice(K, e, 0)))


def test_projection_of_cube_section():
    for n in (3, 4):
        P = bd.project(fm.cube_section(n), fm.unit(n, n - 1))
        assert bd.same_body(P, fm.cube(n - 1))


def test_project_rejects_zero():
    with pytest.raises(Exception):
        bd.project(fm.cube(2), (0, 0))


# -- volume ------------------------------------------------------------------


@pytest.mark.parametrize("n", [2, 3, 4])
def test_volume_cube_and_cross(n):
    from math import factorial

    assert bd.volume(fm.cube(n)) == 2**n
    assert bd.volume(fm.cross_polytope(n)) == Fraction(2**n, factorial(n))


def test_volume_lower_dimensional():
    # flat square in R^3, lattice-normalised inside its affine hull
    assert bd.volume(fm.flat_square(3)) == 4


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10**6))
def test_mahler_volume_product(seed):
    K = fm.random_symmetric(3, 4, 3, seed=seed)
    if not K.is_full_dimensional:
        return
    assert bd.volume(K) * bd.volume(bd.polar(K)) >= Fraction(27, 6)


def test_centroid_of_simplex():
    c = bd.centroid(fm.simplex_T(4))
    assert c == (Fraction(1, 2), 1, 1)


# -- quadrics ----------------------------------------------------------------


def test_ball_support_and_floor():
    B = bd.Ball(2, 2)
    assert B.support_floor((1, 0)) == 1
    assert B.support((1, 1)) >= 2
    assert B.contains((1, 1)) and not B.contains((2, 0))


def test_ball_count_matches_circle_oracle():
    r2 = 25
    oracle = sum(1 for x, y in itertools.product(range(-5, 6), repeat=2) if x * x + y * y <= r2)
    assert ct.count_points(bd.Ball(r2, 2)) == oracle == 81
