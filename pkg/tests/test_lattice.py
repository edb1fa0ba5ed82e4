from __future__ import annotations

import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from latslice import body as bd
from latslice import exact as ex
from latslice.harness import families as fm
from latslice.lattice import (
    AffineLattice,
    Lattice,
    LatticeError,
    coset_representatives,
    mahler_basis,
    polar_lattice,
    primitive_normal,
    primitive_sublattice,
    projected_lattice,
    projection_map,
    successive_minima,
)

Z3 = Lattice.standard(3)


def unimodular_4():
    # product of elementary matrices
    U = ex.identity(4)
    for i, j, c in [(0, 1, 2), (2, 3, -1), (1, 3, 3), (3, 0, 1)]:
        E = [list(r) for r in ex.identity(4)]
        E[i][j] = Fraction(c)
        U = ex.matmul(U, ex.mat(E))
    return U


def test_polar_of_standard_is_standard():
    assert polar_lattice(Z3).same_as(Z3)


def test_polar_of_scaled_lattice():
    L = Lattice.from_columns([(2, 0, 0), (0, 2, 0), (0, 0, 2)])
    P = polar_lattice(L)
    assert P.same_as(Lattice.from_columns([(Fraction(1, 2), 0, 0), (0, Fraction(1, 2), 0), (0, 0, Fraction(1, 2))]))
    assert L.det * P.det == 1


def test_polar_of_unimodular_image():
    L = Lattice(unimodular_4())
    assert L.det * polar_lattice(L).det == 1
    assert polar_lattice(polar_lattice(L)).same_as(L)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.lists(st.integers(-4, 4), min_size=3, max_size=3), min_size=3, max_size=3))
def test_polar_involution_and_determinant(rows):
    M = ex.mat(rows)
    if ex.determinant(M) == 0:
        return
    L = Lattice(M)
    P = polar_lattice(L)
    assert L.det * P.det == 1
    assert polar_lattice(P).same_as(L)


def test_polar_rejects_rank_deficient():
    with pytest.raises(LatticeError):
        polar_lattice(Lattice.from_columns([(1, 0, 0)]))


def test_primitive_sublattice_saturates():
    S = primitive_sublattice(Z3, [(2, 0, 0)])
    assert S.vectors == [(1, 0, 0)]


def test_primitive_sublattice_plane():
    S = primitive_sublattice(Z3, [(1, 2, 0), (0, 0, 3)])
    assert S.rank == 2
    assert S.contains((0, 0, 1)) and S.contains((1, 2, 0))
    assert not S.contains((1, 0, 0))
    # every small lattice point of the plane x2 = 2 x1 is in S
    for p in itertools.product(range(-3, 4), repeat=3):
        if p[1] == 2 * p[0]:
            assert S.contains(p)


def test_primitive_sublattice_diagonal_and_empty():
    assert primitive_sublattice(Lattice.standard(2), [(1, 1)]).vectors == [(1, 1)]
    assert primitive_sublattice(Z3, []) is None


def test_projected_lattice_standard():
    P = projected_lattice(Z3, (0, 0, 1))
    assert P.rank == 2
    assert P.same_as(Lattice.from_columns([(1, 0, 0), (0, 1, 0)]))


def test_projected_lattice_diagonal():
    Z2 = Lattice.standard(2)
    P = projected_lattice(Z2, (1, 1))
    assert P.rank == 1
    assert P.contains((Fraction(1, 2), Fraction(-1, 2)))
    section = primitive_sublattice(Z2, [(1, -1)])
    # det(Z^2 cap v^perp) * det(Z^2 | v^perp) = det Z^2, squared
    assert section.det_sq * P.det_sq == 1


def test_projected_lattice_contains_projected_basis():
    v = (1, 2, 2)
    P = projected_lattice(Z3, v)
    vv = ex.norm_sq(v)
    for e in Z3.vectors:
        proj = ex.sub(e, ex.scale(ex.dot(e, v) / vv, v))
        c = P.coordinates(proj)
        assert c is not None and ex.is_integral(c)


def test_projection_map_matches_projected_lattice():
    v = (1, 2, 2)
    P = projected_lattice(Z3, v)
    kmap = projection_map(Z3, v)
    vv = ex.norm_sq(v)
    for z in [(1, 0, 0), (3, -1, 2), (0, 5, -4)]:
        proj = ex.sub(z, ex.scale(ex.dot(z, v) / vv, v))
        assert P.coordinates(proj) == tuple(ex.dot(k, z) for k in kmap)


def test_projection_rejects_zero():
    with pytest.raises(LatticeError):
        projected_lattice(Z3, (0, 0, 0))


@pytest.mark.parametrize(
    "spanning, expected",
    [
        ([(1, 0, 0), (0, 1, 0)], (0, 0, 1)),
        ([(1, 0, 1), (0, 1, 1)], (1, 1, -1)),
    ],
)
def test_primitive_normal(spanning, expected):
    w = primitive_normal(Z3, spanning)
    assert w in (expected, tuple(-x for x in expected))


def test_primitive_normal_plane():
    w = primitive_normal(Lattice.standard(2), [(1, 2)])
    assert w in ((2, -1), (-2, 1))


def test_primitive_normal_determinant_identity():
    L = Lattice(unimodular_4())
    spanning = L.vectors[:3]
    w = primitive_normal(L, spanning)
    H = primitive_sublattice(L, spanning)
    # det(L cap H)^2 = |w|^2 det(L)^2
    assert H.det_sq == ex.norm_sq(w) * L.det_sq


def test_primitive_normal_rank_check():
    with pytest.raises(LatticeError):
        primitive_normal(Z3, [(1, 0, 0)])


def test_coset_representatives():
    reps = coset_representatives(Lattice.standard(2), 2)
    assert sorted(reps) == [(0, 0), (0, 1), (1, 0), (1, 1)]
    assert coset_representatives(Z3, 1) == [(0, 0, 0)]
    reps = coset_representatives(Z3, 4)
    assert len(reps) == 64
    classes = {tuple(int(x) % 4 for x in r) for r in reps}
    assert len(classes) == 64
    with pytest.raises(LatticeError):
        coset_representatives(Z3, 0)


def test_affine_lattice_shift():
    A = AffineLattice(Z3, (Fraction(1, 2), 0, 0))
    assert A.point((1, 1, 1)) == (Fraction(3, 2), 1, 1)


def test_minima_cube():
    prof = successive_minima(fm.cube(3))
    assert prof.minima == (1, 1, 1)
    assert sorted(prof.witnesses) == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]


def test_minima_cross_h():
    prof = successive_minima(fm.cross_h(7))
    assert prof.minima == (Fraction(1, 7), 1)
    assert prof.witnesses == ((0, 1), (1, 0))


def test_minima_half_cube():
    K = bd.VPolytope([tuple(Fraction(s, 2) for s in signs) for signs in itertools.product((-1, 1), repeat=3)])
    assert successive_minima(K).minima == (2, 2, 2)


def test_minima_rejects_non_symmetric():
    with pytest.raises((LatticeError, bd.BodyError)):
        successive_minima(fm.simplex_T(2))


def test_minima_in_general_lattice():
    L = Lattice.from_columns([(2, 0), (0, 1)])
    prof = successive_minima(fm.cube(2, 3), L)
    # the lattice points (0, 1) and (2, 0) have gauges 1/3 and 2/3
    assert prof.minima == (Fraction(1, 3), Fraction(2, 3))


def test_mahler_cube_and_cross_h():
    mb = mahler_basis(fm.cube(3))
    assert mb.gauge_values == (1, 1, 1)
    assert abs(ex.determinant(ex.from_columns(mb.vectors))) == 1
    mb = mahler_basis(fm.cross_h(5))
    assert mb.vectors == ((0, 1), (1, 0))
    assert mb.gauge_values == (Fraction(1, 5), 1)


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10**6))
def test_mahler_bound_random(seed):
    K = fm.random_symmetric(3, 4, 3, seed=seed)
    if not K.is_full_dimensional:
        return
    prof = successive_minima(K)
    assert all(a <= b for a, b in zip(prof.minima, prof.minima[1:]))
    assert ex.rank_of_vectors(prof.witnesses) == 3
    assert tuple(K.gauge(w) for w in prof.witnesses) == prof.minima
    mb = mahler_basis(K)
    assert abs(ex.determinant(ex.from_columns(mb.vectors))) == 1
    for i, g in enumerate(mb.gauge_values):
        assert g <= max(Fraction(1), Fraction(i + 1, 2)) * prof.minima[i]


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10**6))
def test_minima_duality_and_minkowski(seed):
    K = fm.random_symmetric(3, 4, 3, seed=seed)
    if not K.is_full_dimensional:
        return
    lam = successive_minima(K).minima
    lam_polar = successive_minima(bd.polar(K)).minima
    n = 3
    for i in range(n):
        assert lam_polar[i] * lam[n - 1 - i] >= 1
    vol = bd.volume(K)
    prod = lam[0] * lam[1] * lam[2]
    assert Fraction(2**n, 6) <= prod * vol <= 2**n
