"""Lattices in rational space and the constructions built on them.

A :class:`Lattice` stores a column basis in ambient coordinates.  Most
algorithms reduce to the integer lattice by passing to basis coordinates:
for ``L = B Z^k`` a point ``B c`` has coordinates ``c``, and a functional
``b`` of the polar lattice acts on coordinates as ``B^T b``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from . import exact as ex
from .exact import ExactError


class LatticeError(ValueError):
    pass


@dataclass(frozen=True)
class Lattice:
    basis: tuple  # QMatrix, n x k, columns are basis vectors

    def __post_init__(self):
        if not self.basis or not self.basis[0]:
            raise LatticeError("empty basis; use Lattice.zero(n) for the rank-0 lattice")
        if ex.rank(self.basis) != len(self.basis[0]):
            raise LatticeError("basis vectors are linearly dependent")

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence]) -> "Lattice":
        return cls(ex.from_columns(cols))

    @classmethod
    def standard(cls, n: int) -> "Lattice":
        return cls(ex.identity(n))

    @property
    def ambient_dim(self) -> int:
        return len(self.basis)

    @property
    def rank(self) -> int:
        return len(self.basis[0])

    @property
    def is_full_rank(self) -> bool:
        return self.rank == self.ambient_dim

    @property
    def vectors(self) -> list[tuple]:
        return ex.columns(self.basis)

    @property
    def gram(self):
        return ex.matmul(ex.transpose(self.basis), self.basis)

    @property
    def det_sq(self) -> Fraction:
        """Squared covolume ``det(B^T B)``; rational for every rank."""
        return ex.determinant(self.gram)

    @property
    def det(self) -> Fraction:
        if not self.is_full_rank:
            raise LatticeError("det of a non-full-rank lattice is generally irrational; use det_sq")
        return abs(ex.determinant(self.basis))

    def is_standard(self) -> bool:
        return self.is_full_rank and self.basis == ex.identity(self.ambient_dim)

    def point(self, coords: Sequence) -> tuple:
        return ex.matvec(self.basis, coords)

    def coordinates(self, x: Sequence) -> Optional[tuple]:
        """Rational basis coordinates of ``x`` or ``None`` if outside the span."""
        return ex.rref_solve(self.basis, x)

    def contains(self, x: Sequence) -> bool:
        c = self.coordinates(x)
        return c is not None and ex.is_integral(c)

    def same_as(self, other: "Lattice") -> bool:
        """Equality as point sets (bases may differ by a unimodular map)."""
        if self.ambient_dim != other.ambient_dim or self.rank != other.rank:
            return False
        return all(other.contains(v) for v in self.vectors) and all(self.contains(v) for v in other.vectors)


@dataclass(frozen=True)
class AffineLattice:
    lattice: Lattice
    shift: tuple = field(default=None)

    def __post_init__(self):
        if self.shift is None:
            object.__setattr__(self, "shift", tuple(Fraction(0) for _ in range(self.lattice.ambient_dim)))
        else:
            object.__setattr__(self, "shift", ex.vec(self.shift))
        if len(self.shift) != self.lattice.ambient_dim:
            raise LatticeError("shift length does not match ambient dimension")

    @classmethod
    def standard(cls, n: int) -> "AffineLattice":
        return cls(Lattice.standard(n))

    def point(self, coords: Sequence) -> tuple:
        return ex.add(self.shift, self.lattice.point(coords))


def polar_lattice(lat: Lattice) -> Lattice:
    if not lat.is_full_rank:
        raise LatticeError("polar lattice needs a full-rank lattice")
    return Lattice(ex.transpose(ex.inverse(lat.basis)))


def primitive_sublattice(lat: Lattice, spanning: Sequence[Sequence]) -> Optional[Lattice]:
    """Basis of ``lat`` intersected with the span of ``spanning``.

    Returns ``None`` for the rank-0 lattice (empty or all-zero spanning set).
    """
    coords = []
    for s in spanning:
        c = lat.coordinates(s)
        if c is None or not ex.is_integral(c):
            raise LatticeError(f"spanning vector {tuple(s)} is not a lattice vector")
        coords.append(c)
    if not coords or ex.rank_of_vectors(coords) == 0:
        return None
    # Z^k meets span(coords) in the integer kernel of its orthogonal complement
    complement = ex.integer_kernel(ex.mat(coords))
    k = lat.rank
    if complement:
        sat = ex.integer_kernel(ex.mat(complement))
    else:
        sat = [tuple(int(i == j) for i in range(k)) for j in range(k)]
    sat = ex.canonical_basis(sat)
    return Lattice.from_columns([lat.point(c) for c in sat])


def primitive_normal(lat: Lattice, hyperplane_spanning: Sequence[Sequence]) -> tuple:
    """Primitive vector of the polar lattice orthogonal to the given hyperplane."""
    if not lat.is_full_rank:
        raise LatticeError("primitive_normal needs a full-rank lattice")
    n = lat.ambient_dim
    coords = [lat.coordinates(s) for s in hyperplane_spanning]
    if any(c is None for c in coords) or ex.rank_of_vectors(coords) != n - 1:
        raise LatticeError("hyperplane spanning set must have rank n-1")
    (w,) = ex.integer_kernel(ex.mat(coords))
    w = ex.canonical_sign(ex.primitive(w))
    dual = polar_lattice(lat)
    return dual.point(w)


def normal_coordinates(lat: Lattice, v: Sequence) -> tuple[int, ...]:
    """Primitive integer coordinates, in the polar basis, of the functional ``<v, .>``."""
    w = ex.matvec(ex.transpose(lat.basis), v)
    return ex.primitive(w)


def projected_lattice(lat: Lattice, v: Sequence) -> Lattice:
    """The orthogonal projection of ``lat`` onto ``v^perp`` as a rank ``n-1`` lattice.

    Computed as the polar, inside ``v^perp``, of the primitive sublattice of the
    polar lattice orthogonal to ``v``.  The basis is HNF-canonical in those
    terms, so the projection of ``lat.point(z)`` has integer coordinates
    ``K^T z`` where ``K`` is :func:`projection_map`.
    """
    S = _polar_section_basis(lat, v)
    gram_inv = ex.inverse(ex.matmul(ex.transpose(S), S))
    return Lattice(ex.matmul(S, gram_inv))


def _polar_section_basis(lat: Lattice, v: Sequence):
    K = projection_map(lat, v)
    dual = polar_lattice(lat)
    return ex.from_columns([dual.point(k) for k in K])


def projection_map(lat: Lattice, v: Sequence) -> list[tuple[int, ...]]:
    """Integer vectors ``k_1..k_{n-1}``: the projection of ``lat.point(z)`` onto
    ``v^perp`` has coordinates ``(k_i . z)`` in :func:`projected_lattice`."""
    if not lat.is_full_rank:
        raise LatticeError("projection needs a full-rank lattice")
    v = ex.vec(v)
    if not any(v):
        raise LatticeError("projection direction must be nonzero")
    coords = lat.coordinates(v)
    if coords is None:
        raise LatticeError("direction outside the lattice span")
    # functional <u, B z> with u in polar lattice: polar coordinates w, u = B^-T w,
    # u orthogonal to v  <=>  w . coords(v) = 0
    kernel = ex.integer_kernel(ex.mat([coords]))
    return ex.canonical_basis(kernel)


def coset_representatives(lat: Lattice, m: int) -> list[tuple]:
    """Representatives ``B c`` with ``c`` in ``{0..m-1}^k`` of ``lat / m lat``."""
    if m < 1:
        raise LatticeError("m must be a positive integer")
    reps = []
    for c in itertools.product(range(m), repeat=lat.rank):
        reps.append(lat.point(c))
    return reps


# --------------------------------------------------------------------------
# Successive minima and Mahler bases


@dataclass(frozen=True)
class MinimaProfile:
    minima: tuple  # Fractions, non-decreasing
    witnesses: tuple  # lattice vectors in ambient coordinates

    def __len__(self):
        return len(self.minima)


@dataclass(frozen=True)
class MahlerBasis:
    vectors: tuple
    gauge_values: tuple
    minima: tuple

    def bound(self, i: int) -> Fraction:
        """Guaranteed ceiling for ``gauge_values[i]`` (0-based index)."""
        return max(Fraction(1), Fraction(i + 1, 2)) * self.minima[i]


def _to_coordinates(body, lat: Lattice):
    from .body import linear_image

    if lat.is_standard():
        return body
    return linear_image(body, ex.inverse(lat.basis))


def _gauge_key(item):
    # equal gauges: shorter vectors first, then lexicographic
    g, p = item
    return g, sum(x * x for x in p), p


def _nonzero_points_by_gauge(body, start: Fraction):
    """Yield candidate lists ``(mu, points sorted by (gauge, lex))`` for doubling ``mu``."""
    from .counting import integer_points
    from .body import dilate

    mu = start
    while True:
        # symmetric body: keep one representative of each pair +-p
        pts = [p for p in integer_points(dilate(body, mu)) if any(p) and ex.canonical_sign(p) == p]
        keyed = sorted(((body.gauge(p), p) for p in pts), key=_gauge_key)
        yield mu, keyed
        mu *= 2


def _greedy_independent(keyed, n):
    chosen = []
    for g, p in keyed:
        if ex.rank_of_vectors(chosen + [p]) > len(chosen):
            chosen.append(p)
            if len(chosen) == n:
                break
    return chosen


def successive_minima(body, lat: Optional[Lattice] = None) -> MinimaProfile:
    """Exact successive minima of an origin-symmetric full-dimensional polytope.

    Enumerates lattice points of ``mu K`` for doubling ``mu`` until ``n``
    independent ones appear, then picks witnesses greedily by exact gauge,
    ties broken by Euclidean length and then lexicographically.
    """
    n = body.dim
    lat = lat or Lattice.standard(n)
    K = _to_coordinates(body, lat)
    K.require_interior_origin()
    if not K.is_origin_symmetric:
        raise LatticeError("successive minima need an origin-symmetric body")
    h = max(K.support(tuple(int(i == j) * s for j in range(n))) for i in range(n) for s in (1, -1))
    start = Fraction(1) / h
    for mu, keyed in _nonzero_points_by_gauge(K, start):
        chosen = _greedy_independent(keyed, n)
        if len(chosen) == n:
            break
    gauges = tuple(K.gauge(p) for p in chosen)
    return MinimaProfile(gauges, tuple(lat.point(p) for p in chosen))


def mahler_basis(body, lat: Optional[Lattice] = None) -> MahlerBasis:
    """Lattice basis ``b_1..b_n`` with ``|b_i|_K <= max(1, i/2) lambda_i``.

    Layer by layer: ``L_i`` is the lattice inside the span of the first ``i``
    minima witnesses; ``b_i`` is the gauge-smallest vector of ``L_i`` whose
    coordinate along a complement of ``L_{i-1}`` is ``+-1``.  Such a vector of
    gauge at most ``i/2 lambda_i`` always exists, and the bound is asserted.
    """
    n = body.dim
    lat = lat or Lattice.standard(n)
    K = _to_coordinates(body, lat)
    prof = successive_minima(K)
    minima, wit = prof.minima, [ex.to_int_vector(w) for w in prof.witnesses]
    from .counting import integer_points
    from .body import dilate

    radius = max(Fraction(1), Fraction(n, 2)) * minima[-1]
    pool = sorted(
        ((K.gauge(p), p) for p in integer_points(dilate(K, radius)) if any(p) and ex.canonical_sign(p) == p),
        key=_gauge_key,
    )
    basis: list[tuple[int, ...]] = []
    for i in range(n):
        layer = primitive_sublattice(Lattice.standard(n), wit[: i + 1])
        layer_basis = [ex.to_int_vector(c) for c in layer.vectors]
        # coefficient of the new direction: last coordinate w.r.t. (basis, complement)
        if basis:
            extra = _complement_in(layer_basis, basis)
        else:
            extra = layer_basis[0]
        frame = ex.from_columns(basis + [extra])
        best = None
        for g, p in pool:
            if g > max(Fraction(1), Fraction(i + 1, 2)) * minima[i]:
                break
            c = ex.rref_solve(frame, p)
            if c is None or abs(c[-1]) != 1:
                continue
            best = (g, p)
            break
        if best is None:
            raise AssertionError(f"Mahler bound violated at index {i + 1}")
        basis.append(best[1])
    if abs(ex.determinant(ex.from_columns(basis))) != 1:
        raise AssertionError("Mahler construction did not produce a basis")
    gauges = tuple(K.gauge(b) for b in basis)
    mb = MahlerBasis(tuple(lat.point(b) for b in basis), gauges, minima)
    for i, g in enumerate(gauges):
        if g > mb.bound(i):
            raise AssertionError(f"Mahler bound violated at index {i + 1}")
    return mb


def _complement_in(layer_basis, sub_basis):
    """A vector completing ``sub_basis`` (basis of a primitive sublattice of the
    layer) to a basis of the layer lattice spanned by ``layer_basis``."""
    L = ex.from_columns(layer_basis)
    sub_coords = [ex.to_int_vector(ex.rref_solve(L, b)) for b in sub_basis]
    (extra,) = ex.complete_to_unimodular(sub_coords)
    return ex.to_int_vector(ex.matvec(L, extra))
