"""Exact lattice point enumeration.

Polytopes are enumerated slab-wise: every coordinate but the one with the
widest range is iterated over its bounding box, and the last coordinate gets
an exact integer interval from the (integer-scaled) facet rows.  Quadrics get
their inner interval from an exact integer square root.  Arithmetic runs in
numpy ``int64`` when the magnitudes allow it and falls back to Python
integers (``dtype=object``) otherwise.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, floor, gcd, isqrt
from functools import reduce
from typing import Optional, Sequence

import numpy as np

from . import body as bd
from . import exact as ex
from .exact import LPStatus
from .lattice import AffineLattice, Lattice, projection_map

POINTS_THRESHOLD = 100_000
OUTER_CHUNK = 50_000


@dataclass(frozen=True)
class CountResult:
    count: int
    points: Optional[tuple] = None
    lattice_used: Optional[Lattice] = None
    body_dim: Optional[int] = None


@dataclass(frozen=True)
class SectionScan:
    normal: tuple
    per_level: dict
    best_level: int
    best_count: int


@dataclass(frozen=True)
class GlobalSection:
    normal: tuple
    level: int
    count: int
    normal_bound: int
    normals_scanned: int


# --------------------------------------------------------------------------
# enumeration core on Z^n


def _bounding_box(K) -> Optional[list[tuple[int, int]]]:
    """Integer box containing all lattice points of ``K``, or ``None`` if ``K`` is empty."""
    if isinstance(K, bd.EmptyBody):
        return None
    if isinstance(K, bd.Quadric):
        if K.is_empty:
            return None
        return K.bounding_box()
    pts = K.__dict__.get("vertices", K.__dict__.get("_support_points"))
    if pts is not None:
        if not pts:
            return None
        box = []
        for i in range(K.dim):
            vals = [v[i] for v in pts]
            box.append((ceil(min(vals)), floor(max(vals))))
        return box
    A = [a for a, _ in K.halfspaces]
    b = [b for _, b in K.halfspaces]
    box = []
    for i in range(K.dim):
        e = [0] * K.dim
        e[i] = 1
        st, hi, _ = ex.lp_maximize(A, b, e)
        if st == LPStatus.INFEASIBLE:
            return None
        if st == LPStatus.UNBOUNDED:
            raise bd.BodyError("cannot count an unbounded body")
        e[i] = -1
        _, lo, _ = ex.lp_maximize(A, b, e)
        box.append((ceil(-lo), floor(hi)))
    return box


def _fits_int64(*bounds: int) -> bool:
    return max((abs(int(x)) for x in bounds), default=0) < 2**61


def _outer_grid(ranges: list[tuple[int, int]], dtype) -> "itertools.Iterator[np.ndarray]":
    """Chunks of the product of integer ranges, as arrays with one row per point."""
    if not ranges:
        yield np.zeros((1, 0), dtype=dtype)
        return
    sizes = [hi - lo + 1 for lo, hi in ranges]
    if any(s <= 0 for s in sizes):
        return
    # iterate the first range in slabs so each chunk stays bounded
    rest = ranges[1:]
    rest_size = 1
    for s in sizes[1:]:
        rest_size *= s
    if rest:
        grids = np.meshgrid(*[np.arange(lo, hi + 1, dtype=np.int64) for lo, hi in rest], indexing="ij")
        rest_pts = np.stack([g.ravel() for g in grids], axis=1).astype(dtype)
    else:
        rest_pts = np.zeros((1, 0), dtype=dtype)
    step = max(1, OUTER_CHUNK // max(rest_size, 1))
    lo0, hi0 = ranges[0]
    for start in range(lo0, hi0 + 1, step):
        stop = min(hi0, start + step - 1)
        first = np.arange(start, stop + 1, dtype=np.int64).astype(dtype)
        block = np.concatenate(
            [np.repeat(first, len(rest_pts))[:, None], np.tile(rest_pts, (len(first), 1))], axis=1
        )
        yield block


def _polytope_intervals(rows, inner: int, outer_pts: np.ndarray, lo: int, hi: int, dtype):
    n_out = outer_pts.shape[0]
    low = np.full(n_out, lo, dtype=dtype)
    high = np.full(n_out, hi, dtype=dtype)
    for a, beta in rows:
        c = a[inner]
        a_out = np.array([x for i, x in enumerate(a) if i != inner], dtype=dtype)
        s = outer_pts @ a_out if len(a_out) else np.zeros(n_out, dtype=dtype)
        rhs = beta - s
        if c > 0:
            high = np.minimum(high, rhs // c)
        elif c < 0:
            low = np.maximum(low, -(rhs // -c))
        else:
            high = np.where(rhs >= 0, high, lo - 1)
    return low, high


def _quadric_intervals(K: bd.Quadric, inner: int, outer_pts: np.ndarray, lo: int, hi: int):
    Q, q, q0 = K.integer_form()
    n = len(Q)
    others = [i for i in range(n) if i != inner]
    alpha = Q[inner][inner]
    lows, highs = [], []
    for row in outer_pts.tolist():
        c = dict(zip(others, row))
        beta = q[inner] + sum(Q[inner][j] * c[j] for j in others)
        gamma = q0 + sum(Q[i][j] * c[i] * c[j] for i in others for j in others) + 2 * sum(q[j] * c[j] for j in others)
        disc = beta * beta - alpha * gamma
        if disc < 0:
            lows.append(lo)
            highs.append(lo - 1)
            continue
        f = lambda x: alpha * x * x + 2 * beta * x + gamma
        s = isqrt(disc)
        top = (-beta + s) // alpha
        while f(top + 1) <= 0:
            top += 1
        while top >= -beta / alpha and f(top) > 0:
            top -= 1
        bottom = -((beta + s) // alpha)
        while f(bottom - 1) <= 0:
            bottom -= 1
        while bottom <= -beta / alpha and f(bottom) > 0:
            bottom += 1
        lows.append(max(lo, bottom))
        highs.append(min(hi, top))
    return np.array(lows, dtype=object), np.array(highs, dtype=object)


def _enumerate(K, want_points: bool):
    """Count (and optionally list) the points of ``Z^n`` in ``K``."""
    box = _bounding_box(K)
    if box is None:
        return 0, ([] if want_points else None)
    n = K.dim
    if any(lo > hi for lo, hi in box):
        return 0, ([] if want_points else None)
    inner = max(range(n), key=lambda i: (box[i][1] - box[i][0], i))
    outer_ranges = [box[i] for i in range(n) if i != inner]
    lo, hi = box[inner]
    is_quadric = isinstance(K, bd.Quadric)
    if not is_quadric:
        rows = K.integer_rows()
        mags = [abs(beta) for _, beta in rows]
        coord = max(max(abs(l), abs(h)) for l, h in box) + 1
        mags += [sum(abs(x) for x in a) * coord for a, _ in rows]
        dtype = np.int64 if _fits_int64(*mags) else object
    else:
        dtype = object
    total = 0
    pieces = []
    for outer in _outer_grid(outer_ranges, dtype):
        if is_quadric:
            low, high = _quadric_intervals(K, inner, outer, lo, hi)
        else:
            low, high = _polytope_intervals(rows, inner, outer, lo, hi, dtype)
        lengths = high - low + 1
        lengths = np.where(lengths > 0, lengths, 0)
        total += int(lengths.sum())
        if want_points and total <= POINTS_THRESHOLD:
            keep = lengths > 0
            for o, l, m in zip(outer[keep].tolist(), low[keep].tolist(), lengths[keep].tolist()):
                for x in range(int(l), int(l) + int(m)):
                    p = list(o)
                    p.insert(inner, x)
                    pieces.append(tuple(int(v) for v in p))
    if want_points:
        if total > POINTS_THRESHOLD:
            return total, None
        pieces.sort()
        return total, pieces
    return total, None


def integer_points(K) -> list[tuple[int, ...]]:
    """All points of ``Z^n`` in ``K``, lexicographically sorted (no retention threshold)."""
    global POINTS_THRESHOLD
    saved = POINTS_THRESHOLD
    POINTS_THRESHOLD = 10**12
    try:
        _, pts = _enumerate(K, True)
    finally:
        POINTS_THRESHOLD = saved
    return pts


def count_points(K) -> int:
    """``#(K)`` for the standard lattice."""
    return _enumerate(K, False)[0]


def _to_lattice_coordinates(K, L: AffineLattice):
    lat = L.lattice
    if lat.is_standard() and not any(L.shift):
        return K
    if not lat.is_full_rank:
        raise bd.BodyError("counting needs a lattice of full rank in the body's space")
    return bd.restrict(K, L.shift, lat.vectors)


def count(K, L: Optional[AffineLattice] = None, keep_points: bool = True) -> CountResult:
    """Exact ``#_L(K)``; points are in the lattice's basis coordinates."""
    if L is None:
        L = AffineLattice.standard(K.dim)
    if isinstance(L, Lattice):
        L = AffineLattice(L)
    Kc = _to_lattice_coordinates(K, L)
    c, pts = _enumerate(Kc, keep_points)
    return CountResult(c, tuple(pts) if pts is not None else None, L.lattice, _intrinsic_dim(K))


def _intrinsic_dim(K) -> Optional[int]:
    if isinstance(K, bd.Polytope):
        pts = K.__dict__.get("_support_points")
        if pts and "vertices" not in K.__dict__:
            return ex.rank_of_vectors([ex.sub(p, pts[0]) for p in pts[1:]]) if len(pts) > 1 else 0
        return K.affine_dim
    if isinstance(K, bd.EmptyBody):
        return -1
    return K.dim


# --------------------------------------------------------------------------
# sections and projections


def _check_normal(b: Sequence) -> tuple[int, ...]:
    b = tuple(int(x) for x in b)
    if not any(b):
        raise bd.BodyError("normal must be nonzero")
    return b


def count_section(K, b: Sequence[int], j: int, keep_points: bool = False) -> CountResult:
    """``#(K cap {<b, x> = j})`` counted in the hyperplane's own lattice coordinates."""
    b = _check_normal(b)
    n = K.dim
    if n == 1:
        x = Fraction(j, b[0])
        ok = x.denominator == 1 and K.contains((x,))
        return CountResult(int(ok), ((),) if ok and keep_points else None, None, 0)
    S = bd.slice(K, b, j)
    if isinstance(S, bd.EmptyBody):
        return CountResult(0, () if keep_points else None, None, -1)
    c, pts = _enumerate(S, keep_points)
    return CountResult(c, tuple(pts) if pts is not None else None, Lattice.standard(n - 1), _intrinsic_dim(S))


def _level_range(K, b: tuple[int, ...]) -> tuple[int, int]:
    hi = K.support_floor(b)
    lo = -K.support_floor(tuple(-x for x in b))
    return lo, hi


def _best_level(per_level: dict) -> tuple[int, int]:
    best = max(per_level.values())
    level = min((j for j, c in per_level.items() if c == best), key=lambda j: (abs(j), j))
    return level, best


def _points_array(K) -> np.ndarray:
    pts = integer_points(K)
    if not pts:
        return np.zeros((0, K.dim), dtype=object)
    big = max(abs(x) for p in pts for x in p)
    return np.array(pts, dtype=np.int64 if big < 2**40 else object)


def max_section_over_levels(K, b: Sequence[int], points: Optional[np.ndarray] = None) -> SectionScan:
    """Counts of ``K cap {<b,x> = j}`` for every integer ``j`` with a nonempty real section.

    Levels run from ``-floor(h(-b))`` to ``floor(h(b))``, which is the
    symmetric range ``[-floor(h(b)), floor(h(b))]`` for symmetric ``K``.
    Ties for the best level go to the smallest ``|j|``, then the smallest ``j``.
    """
    b = _check_normal(b)
    g = reduce(gcd, b, 0)
    if abs(g) != 1:
        raise bd.BodyError(f"normal {b} is not primitive")
    lo, hi = _level_range(K, b)
    per_level = {j: 0 for j in range(lo, hi + 1)}
    P = _points_array(K) if points is None else points
    if len(P):
        vals, cnts = np.unique(P @ np.array(b, dtype=P.dtype), return_counts=True)
        for v, c in zip(vals.tolist(), cnts.tolist()):
            per_level[int(v)] = int(c)
    if not per_level:
        return SectionScan(b, {}, 0, 0)
    level, best = _best_level(per_level)
    return SectionScan(b, per_level, level, best)


def primitive_normals(n: int, bound: int) -> list[tuple[int, ...]]:
    """Primitive integer vectors with sup-norm at most ``bound``, one per sign pair, lex sorted."""
    out = []
    for v in itertools.product(range(-bound, bound + 1), repeat=n):
        if not any(v) or reduce(gcd, v, 0) != 1:
            continue
        if ex.canonical_sign(v) != v:
            continue
        out.append(v)
    return sorted(out)


def max_section_global(K, normal_bound: int = 3, points: Optional[np.ndarray] = None) -> GlobalSection:
    """Largest lattice hyperplane section over primitive normals with ``||b||_inf <= B``.

    Normals ``b`` and ``-b`` give the same hyperplanes, so only the
    representative with positive leading entry is scanned.  Ties go to the
    lexicographically smallest normal, then the level rule of
    :func:`max_section_over_levels`.
    """
    if normal_bound < 1:
        raise ValueError("normal_bound must be at least 1")
    P = _points_array(K) if points is None else points
    normals = primitive_normals(K.dim, normal_bound)
    best = None
    for b in normals:
        if len(P):
            vals, cnts = np.unique(P @ np.array(b, dtype=P.dtype), return_counts=True)
            per = {int(v): int(c) for v, c in zip(vals.tolist(), cnts.tolist())}
        else:
            per = {0: 0}
        level, c = _best_level(per)
        if best is None or c > best[2]:
            best = (b, level, c)
    return GlobalSection(best[0], best[1], best[2], normal_bound, len(normals))


def count_projection(K, v: Sequence[int], keep_points: bool = False) -> CountResult:
    """Points of the projected lattice ``Z^n | v^perp`` inside ``K | v^perp``."""
    P = bd.project(K, v)
    c, pts = _enumerate(P, keep_points)
    return CountResult(c, tuple(pts) if pts is not None else None, None, P.affine_dim)


def count_projected_points(K, v: Sequence[int], keep_points: bool = False) -> CountResult:
    """Size of ``(K cap Z^n) | v^perp`` in projected-lattice coordinates."""
    kmap = projection_map(Lattice.standard(K.dim), v)
    P = _points_array(K)
    if not len(P):
        return CountResult(0, () if keep_points else None, None, None)
    M = np.array(kmap, dtype=P.dtype).T
    img = {tuple(int(x) for x in row) for row in (P @ M).tolist()}
    pts = tuple(sorted(img)) if keep_points else None
    return CountResult(len(img), pts, None, None)
