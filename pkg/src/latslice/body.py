"""Convex bodies: rational polytopes and centred quadrics.

A :class:`Polytope` keeps whichever of its vertex / facet descriptions is
known and derives the other on demand by brute-force subset scans with exact
rank checks (``HPolytope`` and ``VPolytope`` only differ in which one they are
built from).  Balls are :class:`Quadric` bodies ``{x : x^T Q x + 2 q.x + q0 <= 0}``,
a family closed under the affine substitutions used for slicing and lattice
coordinates, so ball experiments stay exact.

Halfspaces are stored as ``(a, b)`` with ``a`` a primitive integer vector and
``b`` rational; lower-dimensional polytopes carry their affine hull as pairs
of opposite halfspaces.
"""

from __future__ import annotations

import itertools
import warnings
from fractions import Fraction
from functools import cached_property, reduce
from math import factorial, floor, gcd, isqrt
from typing import Optional, Sequence

import numpy as np

from . import exact as ex
from .exact import ExactError, LPStatus

DIM_CAP = 6


class BodyError(ValueError):
    pass


class DimensionCapError(BodyError):
    pass


def set_dim_cap(n: int) -> None:
    global DIM_CAP
    DIM_CAP = int(n)


def _check_cap(n: int) -> None:
    if n > DIM_CAP:
        raise DimensionCapError(
            f"facet/vertex enumeration in dimension {n} exceeds the cap {DIM_CAP}; "
            "raise it with set_dim_cap() or --dim-cap if you accept the cost"
        )


def _normalize_halfspace(a: Sequence, b) -> Optional[tuple[tuple[int, ...], Fraction]]:
    a = ex.vec(a)
    b = ex.as_fraction(b)
    if not any(a):
        if b < 0:
            return (tuple(0 for _ in a), b)
        return None
    d = ex.common_denominator(a)
    ints = [int(x * d) for x in a]
    g = reduce(gcd, ints, 0)
    return tuple(x // g for x in ints), b * d / g


# --------------------------------------------------------------------------
# batched exact integer determinants


def _int_dtype(max_abs: int, k: int):
    bound = factorial(max(k, 1)) * (2 * max_abs + 1) ** (k + 1) * (k + 1)
    return np.int64 if bound < 2**62 else object


def _batch_det(M: np.ndarray) -> np.ndarray:
    k = M.shape[1]
    if k == 0:
        return np.ones(M.shape[0], dtype=M.dtype)
    if k == 1:
        return M[:, 0, 0].copy()
    if k == 2:
        return M[:, 0, 0] * M[:, 1, 1] - M[:, 0, 1] * M[:, 1, 0]
    out = np.zeros(M.shape[0], dtype=M.dtype)
    for j in range(k):
        minor = np.delete(M[:, 1:, :], j, axis=2)
        term = M[:, 0, j] * _batch_det(minor)
        out = out + term if j % 2 == 0 else out - term
    return out


def _chunks(iterable, size):
    it = iter(iterable)
    while True:
        block = list(itertools.islice(it, size))
        if not block:
            return
        yield block


def _facets_int(points: list[tuple[int, ...]]) -> list[tuple[tuple[int, ...], int]]:
    """Facets ``(a, b)`` (``a.x <= b``, ``a`` primitive) of the hull of full-dimensional integer points."""
    V = len(points)
    d = len(points[0])
    if d == 1:
        xs = [p[0] for p in points]
        return sorted({((-1,), -min(xs)), ((1,), max(xs))})
    max_abs = max(abs(x) for p in points for x in p)
    dtype = _int_dtype(max_abs, d)
    P = np.array(points, dtype=dtype)
    found = set()
    for block in _chunks(itertools.combinations(range(V), d), 40000):
        idx = np.array(block)
        base = P[idx[:, 0]]
        diffs = P[idx[:, 1:]] - base[:, None, :]
        normals = np.empty((len(block), d), dtype=dtype)
        for j in range(d):
            det = _batch_det(np.delete(diffs, j, axis=2))
            normals[:, j] = det if j % 2 == 0 else -det
        nonzero = (normals != 0).any(axis=1)
        if not nonzero.any():
            continue
        normals = normals[nonzero]
        base = base[nonzero]
        offs = (normals * base).sum(axis=1)
        S = normals @ P.T
        le = (S <= offs[:, None]).all(axis=1)
        ge = (S >= offs[:, None]).all(axis=1)
        for row, off, l, g_ in zip(normals[le | ge], offs[le | ge], le[le | ge], ge[le | ge]):
            a = [int(x) for x in row]
            b = int(off)
            if not l:
                a = [-x for x in a]
                b = -b
            g = reduce(gcd, a, 0)
            found.add((tuple(x // g for x in a), b // g))
    return sorted(found)


class _AffineFrame:
    """Affine hull of a point set with a lattice basis of its direction space."""

    def __init__(self, points: list[tuple]):
        n = len(points[0])
        p0 = points[0]
        diffs = [ex.sub(p, p0) for p in points[1:]]
        r = ex.rank_of_vectors(diffs) if diffs else 0
        if r == n:
            eqs = []
        elif r:
            eqs = ex.nullspace(ex.mat(diffs))
        else:
            eqs = [tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)]
        self.equalities = [(ex.primitive(e), None) for e in eqs]
        self.equalities = [(a, ex.dot(a, p0)) for a, _ in self.equalities]
        self.dim = n - len(eqs)
        self.origin = p0
        if self.dim == n:
            self.basis = [tuple(int(i == j) for i in range(n)) for j in range(n)]
        elif self.dim == 0:
            self.basis = []
        else:
            self.basis = ex.canonical_basis(ex.integer_kernel(ex.mat([a for a, _ in self.equalities])))
        if self.basis:
            M = ex.from_columns(self.basis)
            # choose rows where M is invertible
            rows = _independent_rows(M)
            self._rows = rows
            self._inv = ex.inverse(tuple(M[i] for i in rows))

    def coords(self, x: Sequence) -> tuple:
        if not self.basis:
            return ()
        diff = ex.sub(x, self.origin)
        return ex.matvec(self._inv, [diff[i] for i in self._rows])

    def lift_halfspace(self, w: Sequence, gamma) -> tuple:
        """Map ``w.y <= gamma`` in frame coordinates to ambient ``a.x <= b``."""
        n = len(self.origin)
        wt = ex.matvec(ex.transpose(self._inv), w)
        a = [Fraction(0)] * n
        for r, val in zip(self._rows, wt):
            a[r] = val
        b = ex.as_fraction(gamma) + ex.dot(a, self.origin)
        return tuple(a), b

    def point(self, y: Sequence) -> tuple:
        x = self.origin
        for c, v in zip(y, self.basis):
            x = ex.add(x, ex.scale(c, v))
        return x


def _independent_rows(M) -> list[int]:
    rows = []
    for i in range(len(M)):
        if ex.rank_of_vectors([M[r] for r in rows] + [M[i]]) > len(rows):
            rows.append(i)
    return rows


def _hull(points: list[tuple]) -> tuple[list[tuple], list[tuple]]:
    """Extreme points (lex sorted) and canonical halfspaces of ``conv(points)``."""
    points = sorted(set(ex.vec(p) for p in points))
    n = len(points[0])
    _check_cap(n)
    frame = _AffineFrame(points)
    halfspaces = []
    for a, b in frame.equalities:
        halfspaces.append((tuple(a), Fraction(b)))
        halfspaces.append((tuple(-x for x in a), -Fraction(b)))
    if frame.dim == 0:
        return points[:1], sorted(set(halfspaces))
    ys = [frame.coords(p) for p in points]
    D = ex.common_denominator(x for y in ys for x in y)
    ys_int = [tuple(int(x * D) for x in y) for y in ys]
    facets_y = _facets_int(sorted(set(ys_int)))
    tight_sets = []
    for w, g in facets_y:
        a, b = frame.lift_halfspace(w, Fraction(g, D))
        halfspaces.append(_normalize_halfspace(a, b))
        tight_sets.append(w)
    verts = []
    for p, yi in zip(points, ys_int):
        tight = [w for w, g in facets_y if sum(x * y for x, y in zip(w, yi)) == g]
        if frame.dim == 1 or ex.rank_of_vectors(tight) == frame.dim:
            verts.append(p)
    return sorted(verts), sorted(set(halfspaces))


def _vertices_from_halfspaces(halfspaces, n: int) -> list[tuple]:
    """Basic feasible points of ``A x <= b`` by scanning ``n``-row subsets."""
    _check_cap(n)
    if not halfspaces:
        return []
    rows = []
    for a, b in halfspaces:
        d = b.denominator
        rows.append([x * d for x in a] + [b.numerator])
    if any(not any(r[:-1]) and r[-1] < 0 for r in rows):
        return []
    m = len(rows)
    if m < n:
        return []
    max_abs = max(abs(x) for r in rows for x in r)
    dtype = _int_dtype(max_abs, n)
    R = np.array(rows, dtype=dtype)
    A, bvec = R[:, :-1], R[:, -1]
    found = set()
    for block in _chunks(itertools.combinations(range(m), n), 20000):
        idx = np.array(block)
        AS = A[idx]
        bS = bvec[idx]
        D = _batch_det(AS)
        ok = D != 0
        if not ok.any():
            continue
        AS, bS, D = AS[ok], bS[ok], D[ok]
        nums = np.empty((len(D), n), dtype=dtype)
        for j in range(n):
            Aj = AS.copy()
            Aj[:, :, j] = bS
            nums[:, j] = _batch_det(Aj)
        sign = np.where(D > 0, 1, -1).astype(dtype)
        Dp = D * sign
        Np = nums * sign[:, None]
        feas = ((Np @ A.T) <= bvec[None, :] * Dp[:, None]).all(axis=1)
        for num, den in zip(Np[feas], Dp[feas]):
            found.add(tuple(Fraction(int(x), int(den)) for x in num))
    return sorted(found)


# --------------------------------------------------------------------------
# bodies


class Body:
    dim: int

    @property
    def is_origin_symmetric(self) -> bool:
        raise NotImplementedError

    @property
    def is_unconditional(self) -> bool:
        raise NotImplementedError

    @property
    def symmetry(self) -> "SymmetryTag":
        return SymmetryTag(self.is_origin_symmetric, self.is_unconditional)


class SymmetryTag(tuple):
    def __new__(cls, origin_symmetric: bool, unconditional: bool):
        if unconditional and not origin_symmetric:
            raise BodyError("unconditional implies origin-symmetric")
        return super().__new__(cls, (origin_symmetric, unconditional))

    @property
    def origin_symmetric(self) -> bool:
        return self[0]

    @property
    def unconditional(self) -> bool:
        return self[1]


class EmptyBody(Body):
    """Marker for an empty section."""

    def __init__(self, dim: int):
        self.dim = dim

    is_empty = True

    def contains(self, x) -> bool:
        return False

    def __repr__(self):
        return f"EmptyBody(dim={self.dim})"


class Polytope(Body):
    """Rational polytope; build with :class:`VPolytope` or :class:`HPolytope`."""

    kind = "polytope"

    def __init__(self, dim: int, vertices=None, halfspaces=None):
        self.dim = dim
        if vertices is not None:
            self.__dict__["vertices"] = tuple(vertices)
        if halfspaces is not None:
            self.__dict__["halfspaces"] = tuple(halfspaces)

    @cached_property
    def vertices(self) -> tuple:
        return tuple(_vertices_from_halfspaces(self.halfspaces, self.dim))

    @cached_property
    def halfspaces(self) -> tuple:
        verts, hs = _hull(list(self.vertices))
        return tuple(hs)

    @property
    def is_empty(self) -> bool:
        return len(self.vertices) == 0

    def __repr__(self):
        return f"{type(self).__name__}(dim={self.dim}, vertices={len(self.vertices)})"

    def __eq__(self, other):
        return isinstance(other, Polytope) and self.dim == other.dim and self.vertices == other.vertices

    def __hash__(self):
        return hash((self.dim, self.vertices))

    @cached_property
    def affine_dim(self) -> int:
        if self.is_empty:
            return -1
        return _AffineFrame(list(self.vertices)).dim

    @property
    def is_full_dimensional(self) -> bool:
        return self.affine_dim == self.dim

    def contains(self, x: Sequence) -> bool:
        x = ex.vec(x)
        return all(ex.dot(a, x) <= b for a, b in self.halfspaces)

    def support(self, u: Sequence) -> Fraction:
        u = ex.vec(u)
        pts = self.__dict__.get("_support_points")
        if pts is not None and "vertices" not in self.__dict__:
            if not pts:
                raise BodyError("support of an empty polytope")
            return max(ex.dot(u, v) for v in pts)
        if "vertices" in self.__dict__:
            if not self.vertices:
                raise BodyError("support of an empty polytope")
            return max(ex.dot(u, v) for v in self.vertices)
        A = [a for a, _ in self.halfspaces]
        b = [b for _, b in self.halfspaces]
        status, val, _ = ex.lp_maximize(A, b, u)
        if status == LPStatus.UNBOUNDED:
            raise BodyError("unbounded polytope")
        if status == LPStatus.INFEASIBLE:
            raise BodyError("support of an empty polytope")
        return val

    def support_floor(self, u: Sequence) -> int:
        return floor(self.support(u))

    def bounding_box(self) -> list[tuple[Fraction, Fraction]]:
        n = self.dim
        box = []
        for i in range(n):
            e = tuple(int(i == j) for j in range(n))
            lo = -self.support(tuple(-x for x in e))
            hi = self.support(e)
            box.append((lo, hi))
        return box

    def require_interior_origin(self) -> None:
        if not self.halfspaces or any(b <= 0 for _, b in self.halfspaces):
            raise BodyError("the origin is not an interior point")

    def gauge(self, x: Sequence) -> Fraction:
        self.require_interior_origin()
        x = ex.vec(x)
        return max([Fraction(0)] + [ex.dot(a, x) / b for a, b in self.halfspaces])

    @cached_property
    def is_origin_symmetric(self) -> bool:
        vs = set(self.vertices)
        return bool(vs) and all(tuple(-x for x in v) in vs for v in vs)

    @cached_property
    def is_unconditional(self) -> bool:
        if not self.is_origin_symmetric:
            return False
        vs = set(self.vertices)
        for i in range(self.dim):
            for v in vs:
                w = list(v)
                w[i] = -w[i]
                if tuple(w) not in vs:
                    return False
        return True

    def integer_rows(self) -> list[tuple[tuple[int, ...], int]]:
        """Halfspaces tightened for integer points: ``a.x <= floor(b)``."""
        return [(a, floor(b)) for a, b in self.halfspaces]


class VPolytope(Polytope):
    kind = "V"

    def __init__(self, points: Sequence[Sequence]):
        points = [ex.vec(p) for p in points]
        if not points:
            raise BodyError("V-polytope needs at least one point")
        n = len(points[0])
        if any(len(p) != n for p in points):
            raise BodyError("points of mixed dimension")
        verts, hs = _hull(points)
        super().__init__(n, vertices=verts, halfspaces=hs)


class HPolytope(Polytope):
    kind = "H"

    def __init__(self, A: Sequence[Sequence], b: Sequence, *, check_bounded: bool = True):
        if len(A) != len(b):
            raise BodyError("A and b have different lengths")
        if not A:
            raise BodyError("H-polytope needs inequalities")
        n = len(A[0])
        hs = set()
        for a, bi in zip(A, b):
            if len(a) != n:
                raise BodyError("ragged constraint matrix")
            h = _normalize_halfspace(a, bi)
            if h is not None:
                hs.add(h)
        super().__init__(n, halfspaces=sorted(hs))
        if check_bounded:
            self._check_bounded()

    def _check_bounded(self):
        A = [a for a, _ in self.halfspaces]
        bs = [b for _, b in self.halfspaces]
        for i in range(self.dim):
            for s in (1, -1):
                e = tuple(s * int(i == j) for j in range(self.dim))
                status, _, _ = ex.lp_maximize(A, bs, e)
                if status == LPStatus.UNBOUNDED:
                    raise BodyError("H-polytope is unbounded")
                if status == LPStatus.INFEASIBLE:
                    self.__dict__["vertices"] = ()
                    return


def _from_parts(dim, vertices=None, halfspaces=None) -> Polytope:
    return Polytope(dim, vertices=vertices, halfspaces=halfspaces)


class Quadric(Body):
    """Ellipsoid ``{x : x^T Q x + 2 q.x + q0 <= 0}`` with ``Q`` positive definite."""

    kind = "quadric"

    def __init__(self, Q, q=None, q0=0):
        self.Q = ex.mat(Q)
        self.dim = len(self.Q)
        self.q = ex.vec(q) if q is not None else tuple(Fraction(0) for _ in range(self.dim))
        self.q0 = ex.as_fraction(q0)

    def __repr__(self):
        return f"Quadric(dim={self.dim})"

    def value(self, x: Sequence) -> Fraction:
        x = ex.vec(x)
        return ex.dot(x, ex.matvec(self.Q, x)) + 2 * ex.dot(self.q, x) + self.q0

    def contains(self, x: Sequence) -> bool:
        return self.value(x) <= 0

    @cached_property
    def _qinv(self):
        return ex.inverse(self.Q)

    @cached_property
    def center(self) -> tuple:
        return tuple(-x for x in ex.matvec(self._qinv, self.q))

    @cached_property
    def radius_form(self) -> Fraction:
        """``rho`` in ``(x - c)^T Q (x - c) <= rho``."""
        c = self.center
        return -(ex.dot(c, ex.matvec(self.Q, c)) + 2 * ex.dot(self.q, c) + self.q0)

    @property
    def is_empty(self) -> bool:
        return self.radius_form < 0

    def support_sq_part(self, u: Sequence) -> Fraction:
        """``rho * u^T Q^-1 u``: the squared spread of ``<u, .>`` around the centre."""
        u = ex.vec(u)
        return self.radius_form * ex.dot(u, ex.matvec(self._qinv, u))

    def support_floor(self, u: Sequence) -> int:
        """``floor(h(u))`` computed exactly."""
        u = ex.vec(u)
        if self.is_empty:
            raise BodyError("support of an empty body")
        c = ex.dot(u, self.center)
        s = self.support_sq_part(u)
        # largest integer m with m - c <= sqrt(s)
        m = floor(c + Fraction(isqrt(floor(s))))
        while Fraction(m + 1) - c <= 0 or (Fraction(m + 1) - c) ** 2 <= s:
            m += 1
        while Fraction(m) - c > 0 and (Fraction(m) - c) ** 2 > s:
            m -= 1
        return m

    def support(self, u: Sequence) -> Fraction:
        """Rational upper bound for the (generally irrational) support value."""
        return Fraction(self.support_floor(u) + 1)

    def support_le(self, u: Sequence, h) -> bool:
        """Exact test ``h_K(u) <= h``."""
        u = ex.vec(u)
        t = ex.as_fraction(h) - ex.dot(u, self.center)
        return t >= 0 and t * t >= self.support_sq_part(u)

    def bounding_box(self) -> list[tuple[int, int]]:
        out = []
        for i in range(self.dim):
            e = tuple(int(i == j) for j in range(self.dim))
            hi = self.support_floor(e)
            lo = -self.support_floor(tuple(-x for x in e))
            out.append((lo, hi))
        return out

    @property
    def is_origin_symmetric(self) -> bool:
        return not any(self.q)

    @property
    def is_unconditional(self) -> bool:
        n = self.dim
        return self.is_origin_symmetric and all(self.Q[i][j] == 0 for i in range(n) for j in range(n) if i != j)

    def gauge_sq(self, x: Sequence) -> Fraction:
        if not self.is_origin_symmetric or self.q0 >= 0:
            raise BodyError("gauge needs the origin in the interior of a symmetric quadric")
        x = ex.vec(x)
        return ex.dot(x, ex.matvec(self.Q, x)) / -self.q0

    def require_interior_origin(self) -> None:
        if self.q0 >= 0:
            raise BodyError("the origin is not an interior point")

    def substitute(self, t: Sequence, G) -> "Quadric":
        """The quadric in coordinates ``c`` with ``x = t + G c``."""
        t = ex.vec(t)
        Gt = ex.transpose(G)
        Q2 = ex.matmul(Gt, ex.matmul(self.Q, G))
        q2 = ex.add(ex.matvec(Gt, ex.matvec(self.Q, t)), ex.matvec(Gt, self.q))
        return Quadric(Q2, q2, self.value(t))

    def integer_form(self):
        """Integer ``(Q, q, q0)`` with the same solution set (common denominator cleared)."""
        allv = [x for row in self.Q for x in row] + list(self.q) + [self.q0]
        d = ex.common_denominator(allv)
        return (
            [[int(x * d) for x in row] for row in self.Q],
            [int(x * d) for x in self.q],
            int(self.q0 * d),
        )


def Ball(radius_sq, dim: int) -> Quadric:
    """Centred Euclidean ball of squared radius ``radius_sq``."""
    r2 = ex.as_fraction(radius_sq)
    if r2 <= 0:
        raise BodyError("radius_sq must be positive")
    return Quadric(ex.identity(dim), None, -r2)


# --------------------------------------------------------------------------
# operations


def support(K: Body, u: Sequence) -> Fraction:
    return K.support(u)


def gauge(K: Body, x: Sequence) -> Fraction:
    return K.gauge(x)


def polar(K: Body) -> Body:
    """Polar body; the origin must be interior."""
    K.require_interior_origin()
    if isinstance(K, Quadric):
        if not K.is_origin_symmetric:
            raise BodyError("polar of an off-centre quadric is not supported")
        # {x : x^T Q x <= r} polar {y : y^T Q^-1 y <= 1/r}
        r = -K.q0
        return Quadric(K._qinv, None, -1 / r)
    pts = [ex.scale(1 / b, a) for a, b in K.halfspaces]
    return VPolytope(pts)


def v_to_h(K: Polytope) -> Polytope:
    return HPolytope([a for a, _ in K.halfspaces], [b for _, b in K.halfspaces], check_bounded=False) if not isinstance(K, HPolytope) else K


def h_to_v(K: Polytope) -> Polytope:
    if isinstance(K, VPolytope):
        return K
    if K.is_empty:
        raise BodyError("empty H-polytope has no vertex description")
    return VPolytope(K.vertices)


def difference_body(K: Body) -> Polytope:
    if not isinstance(K, Polytope):
        raise BodyError("difference body is only supported for polytopes")
    vs = K.vertices
    return VPolytope([ex.sub(v, w) for v in vs for w in vs])


def linear_image(K: Body, A, t: Optional[Sequence] = None) -> Body:
    """``A K + t`` for a regular matrix ``A``."""
    A = ex.mat(A)
    n = K.dim
    t = ex.vec(t) if t is not None else tuple(Fraction(0) for _ in range(n))
    if ex.determinant(A) == 0:
        raise BodyError("linear_image needs a regular matrix")
    Ainv = ex.inverse(A)
    if isinstance(K, Quadric):
        # x = A y + t  <=>  y = Ainv (x - t)
        return K.substitute(tuple(-x for x in ex.matvec(Ainv, t)), Ainv)
    verts = sorted(ex.add(ex.matvec(A, v), t) for v in K.vertices)
    hs = set()
    for a, b in K.halfspaces:
        a2 = ex.matvec(ex.transpose(Ainv), a)
        h = _normalize_halfspace(a2, b + ex.dot(a2, t))
        hs.add(h)
    return _from_parts(n, verts, sorted(hs))


def dilate(K: Body, mu) -> Body:
    mu = ex.as_fraction(mu)
    if mu <= 0:
        raise BodyError("dilation factor must be positive")
    if isinstance(K, Quadric):
        return linear_image(K, [[mu * int(i == j) for j in range(K.dim)] for i in range(K.dim)])
    verts = tuple(ex.scale(mu, v) for v in K.vertices) if "vertices" in K.__dict__ else None
    hs = tuple((a, b * mu) for a, b in K.halfspaces)
    return _from_parts(K.dim, verts, hs)


def translate(K: Body, t: Sequence) -> Body:
    return linear_image(K, ex.identity(K.dim), t)


def hyperplane_frame(b: Sequence[int], j: int) -> Optional[tuple[tuple[int, ...], list[tuple[int, ...]]]]:
    """Integer point ``t0`` with ``<b, t0> = j`` and a canonical basis of ``Z^n cap b^perp``."""
    b = tuple(int(x) for x in b)
    sol = ex.solve_integer(ex.mat([b]), [j])
    if sol is None:
        return None
    t0, kernel = sol
    return t0, ex.canonical_basis(kernel)


def slice(K: Body, normal: Sequence, level: int) -> Body:
    """``K`` cut by ``<b, x> = level`` in coordinates of a lattice basis of that hyperplane.

    A non-primitive ``b`` is normalised (with a warning); if the level then is
    not integral the lattice section is empty.
    """
    b = tuple(int(x) for x in normal)
    if not any(b):
        raise BodyError("slice normal must be nonzero")
    g = reduce(gcd, b, 0)
    g = abs(g)
    level = ex.as_fraction(level)
    if g != 1:
        warnings.warn(f"slice normal {b} is not primitive; dividing by {g}", stacklevel=2)
        b = tuple(x // g for x in b)
        level = level / g
    n = K.dim
    if level.denominator != 1:
        return EmptyBody(n - 1)
    frame = hyperplane_frame(b, int(level))
    t0, G = frame
    return restrict(K, t0, G)


def restrict(K: Body, t0: Sequence, cols: Sequence[Sequence]) -> Body:
    """``{c : t0 + G c in K}`` for the matrix ``G`` with the given columns."""
    n = K.dim
    k = len(cols)
    if k == 0:
        raise BodyError("restriction to a point is not a body")
    G = ex.from_columns(cols)
    t0 = ex.vec(t0)
    if isinstance(K, EmptyBody):
        return EmptyBody(k)
    if isinstance(K, Quadric):
        return K.substitute(t0, G)
    rows = []
    rhs = []
    Gt = ex.transpose(G)
    for a, b in K.halfspaces:
        rows.append(ex.matvec(Gt, a))
        rhs.append(b - ex.dot(a, t0))
    hs = set()
    for a, b in zip(rows, rhs):
        h = _normalize_halfspace(a, b)
        if h is not None:
            hs.add(h)
    if not hs:
        raise BodyError("restriction has no constraints")
    P = Polytope(k, halfspaces=sorted(hs))
    if k == n - 1 and "vertices" in K.__dict__:
        P._support_points = _section_support_points(K.vertices, t0, G)
    return P


def _section_support_points(vertices, t0, G) -> tuple:
    """Points whose hull is ``K`` cut by the hyperplane ``t0 + im G``, in ``G`` coordinates.

    Every vertex of a hyperplane section lies on a segment between two
    vertices of ``K``, so these points realise the section's support function.
    """
    Gt = ex.transpose(G)
    (normal,) = ex.integer_kernel(Gt)
    level = ex.dot(normal, t0)
    left = ex.matmul(ex.inverse(ex.matmul(Gt, G)), Gt)
    heights = [ex.dot(normal, v) for v in vertices]
    pts = set()
    for v, hv in zip(vertices, heights):
        if hv == level:
            pts.add(v)
    for v, hv in zip(vertices, heights):
        if hv >= level:
            continue
        for w, hw in zip(vertices, heights):
            if hw > level:
                lam = (level - hv) / (hw - hv)
                pts.add(tuple(a + lam * (b - a) for a, b in zip(v, w)))
    return tuple(sorted(ex.matvec(left, ex.sub(x, t0)) for x in pts))


def project(K: Body, v: Sequence) -> Polytope:
    """Orthogonal projection onto ``v^perp`` in coordinates of the projected lattice ``Z^n | v^perp``."""
    from .lattice import Lattice, projection_map

    if not isinstance(K, Polytope):
        raise BodyError("projection is only supported for polytopes")
    kmap = projection_map(Lattice.standard(K.dim), v)
    return VPolytope([tuple(ex.dot(k, x) for k in kmap) for x in K.vertices])


def _triangulate(points: list[tuple]) -> list[list[int]]:
    """Pulling triangulation of a full-dimensional point configuration (indices)."""
    d = len(points[0])
    if len(points) == d + 1:
        return [list(range(d + 1))]
    if d == 1:
        order = sorted(range(len(points)), key=lambda i: points[i])
        return [[order[0], order[-1]]]
    D = ex.common_denominator(x for p in points for x in p)
    ints = [tuple(int(x * D) for x in p) for p in points]
    facets = _facets_int(ints)
    apex = min(range(len(points)), key=lambda i: points[i])
    out = []
    for a, b in facets:
        tight = [i for i, p in enumerate(ints) if sum(x * y for x, y in zip(a, p)) == b]
        if apex in tight:
            continue
        frame = _AffineFrame([points[i] for i in tight])
        sub = [frame.coords(points[i]) for i in tight]
        for simplex in _triangulate(sub):
            out.append([apex] + [tight[i] for i in simplex])
    return out


def triangulation(K: Polytope) -> list[list[tuple]]:
    """Simplices (as vertex lists) of a triangulation of a full-dimensional polytope."""
    if not K.is_full_dimensional:
        raise BodyError("triangulation needs a full-dimensional polytope")
    verts = list(K.vertices)
    return [[verts[i] for i in s] for s in _triangulate(verts)]


def _simplex_volume(simplex: list[tuple]) -> Fraction:
    d = len(simplex) - 1
    M = ex.from_columns([ex.sub(p, simplex[0]) for p in simplex[1:]])
    return abs(ex.determinant(M)) / factorial(d)


def volume(K: Body) -> Fraction:
    """Exact volume.

    Full-dimensional polytopes give their Lebesgue measure.  A polytope of
    lower dimension ``k`` gives its ``k``-volume measured in coordinates of a
    lattice basis of ``Z^n`` intersected with its direction space (Euclidean
    ``k``-volume divided by that lattice's determinant).
    """
    if not isinstance(K, Polytope):
        raise BodyError("exact volume is only available for polytopes")
    if K.is_empty:
        return Fraction(0)
    if K.is_full_dimensional:
        return sum((_simplex_volume(s) for s in triangulation(K)), Fraction(0))
    frame = _AffineFrame(list(K.vertices))
    if frame.dim == 0:
        return Fraction(1)
    ys = [frame.coords(v) for v in K.vertices]
    if frame.dim == 1:
        vals = [y[0] for y in ys]
        return max(vals) - min(vals)
    return sum((_simplex_volume([ys[i] for i in s]) for s in _triangulate(ys)), Fraction(0))


def centroid(K: Polytope) -> tuple:
    simplices = triangulation(K)
    total = Fraction(0)
    acc = tuple(Fraction(0) for _ in range(K.dim))
    for s in simplices:
        v = _simplex_volume(s)
        mean = ex.scale(Fraction(1, len(s)), reduce(ex.add, s))
        acc = ex.add(acc, ex.scale(v, mean))
        total += v
    return ex.scale(1 / total, acc)


def same_body(K: Polytope, L: Polytope) -> bool:
    """Set equality after canonicalisation."""
    return K.dim == L.dim and tuple(K.vertices) == tuple(L.vertices)
