"""Inequality checks.

Every check cross-multiplies to integer or rational powers before comparing,
so verdicts never depend on floating point.  Composite checks attach the
intermediate inequalities of the underlying argument as sub-reports.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial, floor, gcd, prod
from functools import reduce
from typing import Optional, Sequence

import numpy as np

from .. import body as bd
from .. import counting as ct
from .. import exact as ex
from ..lattice import AffineLattice, Lattice, mahler_basis, polar_lattice, successive_minima
from .report import INAPPLICABLE, CheckReport


def describe_body(K) -> dict:
    if isinstance(K, bd.Quadric):
        return {"quadric": {"Q": K.Q, "q": K.q, "q0": K.q0}}
    return {"vertices": list(K.vertices)}


def _instance(K, instance: Optional[dict]) -> dict:
    return dict(instance) if instance is not None else describe_body(K)


def _e(n: int, i: int) -> tuple:
    return tuple(int(i == j) for j in range(n))


def integer_rank(points) -> int:
    """Dimension of the linear span of a set of integer points."""
    if not points:
        return 0
    return ex.rank_of_vectors(points)


def integer_affine_dim(points) -> int:
    if not points:
        return -1
    p0 = points[0]
    return ex.rank_of_vectors([ex.sub(p, p0) for p in points[1:]]) if len(points) > 1 else 0


# --------------------------------------------------------------------------
# Loomis-Whitney and Meyer type inequalities


def check_discrete_lw(K, instance: Optional[dict] = None) -> CheckReport:
    """``#(K)^(n-1) <= prod_i #(K | e_i^perp)`` with projected-lattice counts."""
    n = K.dim
    total = ct.count(K, keep_points=False).count
    projs = [ct.count_projection(K, _e(n, i)).count for i in range(n)]
    return CheckReport.compare(
        "discrete_lw", _instance(K, instance), total ** (n - 1), "<=", prod(projs),
        witnesses={"count": total, "projection_counts": projs},
    )


def coordinate_sections(K) -> list[int]:
    return [ct.count_section(K, _e(K.dim, i), 0).count for i in range(K.dim)]


def check_discrete_meyer(K, instance: Optional[dict] = None) -> CheckReport:
    """``prod_i #(K cap e_i^perp) < 4^(n(n-1)) #(K)^(n-1)`` for symmetric ``K``."""
    inst = _instance(K, instance)
    if not K.is_origin_symmetric:
        return CheckReport.inapplicable("discrete_meyer", inst, "body is not origin-symmetric")
    n = K.dim
    total = ct.count(K, keep_points=False).count
    secs = coordinate_sections(K)
    const = 4 ** (n * (n - 1))
    rep = CheckReport.compare(
        "discrete_meyer", inst, prod(secs), "<", const * total ** (n - 1),
        constants={"factor": const},
        witnesses={
            "count": total,
            "section_counts": secs,
            # conjectured extremal value of this ratio is 1/3^(n-1)
            "count_power_over_sections": Fraction(total ** (n - 1), prod(secs)),
            "sections_over_count_power": Fraction(prod(secs), total ** (n - 1)),
            "conjectured_limit": Fraction(1, 3 ** (n - 1)),
        },
    )
    if n == 2:
        rep.subreports.append(check_planar_meyer(K, inst))
    return rep


def check_planar_meyer(K, instance: Optional[dict] = None) -> CheckReport:
    """Planar refinement ``#(K cap e_1^perp) #(K cap e_2^perp) < 3 #(K)``, any planar body."""
    inst = _instance(K, instance)
    if K.dim != 2:
        return CheckReport.inapplicable("planar_meyer", inst, "needs a planar body")
    total = ct.count(K, keep_points=False).count
    secs = coordinate_sections(K)
    return CheckReport.compare(
        "planar_meyer", inst, prod(secs), "<", 3 * total,
        constants={"factor": 3}, witnesses={"count": total, "section_counts": secs},
    )


def check_unconditional_meyer(K, instance: Optional[dict] = None) -> CheckReport:
    """``3^(n(n-1)) #(K)^(n-1) >= prod_i #(K cap e_i^perp)`` for unconditional ``K``."""
    inst = _instance(K, instance)
    if not K.is_unconditional:
        return CheckReport.inapplicable("unconditional_meyer", inst, "body is not unconditional")
    n = K.dim
    total = ct.count(K, keep_points=False).count
    secs = coordinate_sections(K)
    const = 3 ** (n * (n - 1))
    return CheckReport.compare(
        "unconditional_meyer", inst, const * total ** (n - 1), ">=", prod(secs),
        constants={"factor": const}, witnesses={"count": total, "section_counts": secs},
    )


def simplex_profile(k: int, n: int = 3) -> dict:
    from .families import simplex_T

    T = simplex_T(k, n)
    total = ct.count(T, keep_points=False).count
    secs = coordinate_sections(T)
    return {"count": total, "sections": secs, "ratio": Fraction(total ** (n - 1), prod(secs))}


def simplex_closed_forms(k: int, n: int = 3) -> dict:
    extra = n - 3
    return {
        "count": 2 * (k + 1) + extra,
        "sections": [k + 1 + extra, k + 2 + extra, k + 2 + extra] + [2 * (k + 1) + extra - 1] * extra,
    }


def check_simplex_counterexample(k: int, n: int = 3, instance: Optional[dict] = None) -> CheckReport:
    """Counts of the flat simplices and strict decrease of ``#^(n-1) / prod sections`` in ``k``."""
    inst = instance or {"family": "T_k", "k": k, "n": n}
    cur = simplex_profile(k, n)
    nxt = simplex_profile(k + 1, n)
    rep = CheckReport.compare(
        "simplex_counterexample", inst, nxt["ratio"], "<", cur["ratio"],
        witnesses={"k": cur, "k_plus_1": nxt},
        notes=["ratio #(T_k)^(n-1)/prod #(T_k cap e_i^perp) compared at k+1 and k"],
    )
    want = simplex_closed_forms(k, n)
    got = {"count": cur["count"], "sections": cur["sections"]}
    rep.subreports.append(
        CheckReport(
            "simplex_counts", inst, got, "==", want, "holds" if got == want else "fails",
            notes=["exact counts against closed forms"],
        )
    )
    if n == 3:
        # cube of the stated bound 2^(2/3) (k+1)^(-1/3)
        rep.subreports.append(
            CheckReport.compare("simplex_bound", inst, cur["ratio"], "<=", Fraction(4, k + 1))
        )
    return rep


# --------------------------------------------------------------------------
# translates, dilates, subspaces


def _subspace_normals(n: int, spanning: Sequence[Sequence]) -> list[tuple[int, ...]]:
    return ex.integer_kernel(ex.mat([ex.primitive(v) for v in spanning])) if spanning else [
        _e(n, i) for i in range(n)
    ]


def count_in_affine_subspace(points: np.ndarray, normals, t) -> int:
    """Points ``x`` of the array with ``<a, x - t> = 0`` for every normal ``a``."""
    if not len(points):
        return 0
    mask = np.ones(len(points), dtype=bool)
    for a in normals:
        rhs = ex.dot(a, t)
        if rhs.denominator != 1:
            return 0
        mask &= (points @ np.array(a, dtype=points.dtype)) == int(rhs)
    return int(mask.sum())


def check_brunn(K, spanning: Sequence[Sequence], t: Sequence, instance: Optional[dict] = None) -> CheckReport:
    """``#(K cap (t + L)) <= 2^k #(K cap L)`` for a ``k``-dimensional lattice subspace ``L``."""
    inst = _instance(K, instance)
    inst = {**inst, "subspace": [list(v) for v in spanning], "t": list(t)}
    if not K.is_origin_symmetric:
        return CheckReport.inapplicable("brunn", inst, "body is not origin-symmetric")
    n = K.dim
    try:
        vecs = [ex.vec(v) for v in spanning]
    except ValueError:
        return CheckReport.inapplicable("brunn", inst, "subspace is not rational")
    k = integer_rank(vecs) if vecs else 0
    if k >= n:
        return CheckReport.inapplicable("brunn", inst, "subspace must have dimension below n")
    normals = _subspace_normals(n, [v for v in vecs if any(v)])
    P = ct._points_array(K)
    shifted = count_in_affine_subspace(P, normals, ex.vec(t))
    central = count_in_affine_subspace(P, normals, tuple(0 for _ in range(n)))
    return CheckReport.compare(
        "brunn", inst, shifted, "<=", 2**k * central,
        constants={"factor": 2**k}, witnesses={"translate_count": shifted, "central_count": central, "k": k},
    )


def check_affine_image(K, A, t, instance: Optional[dict] = None) -> CheckReport:
    """``#(A K + t) <= 2^(n-1) |det A| (#(K) + 1)`` for symmetric ``K`` and integer regular ``A``."""
    inst = _instance(K, instance)
    inst = {**inst, "A": [list(r) for r in A], "t": list(t)}
    if not K.is_origin_symmetric:
        return CheckReport.inapplicable("affine_image", inst, "body is not origin-symmetric")
    n = K.dim
    det = ex.determinant(A)
    if det == 0 or not all(ex.is_integral(r) for r in ex.mat(A)):
        return CheckReport.inapplicable("affine_image", inst, "A must be an integer regular matrix")
    image = ct.count(bd.linear_image(K, A, t), keep_points=False).count
    total = ct.count(K, keep_points=False).count
    return CheckReport.compare(
        "affine_image", inst, image, "<=", 2 ** (n - 1) * abs(det) * (total + 1),
        constants={"factor": 2 ** (n - 1) * abs(det)}, witnesses={"image_count": image, "count": total},
    )


def check_translation(K, t, instance: Optional[dict] = None) -> CheckReport:
    rep = check_affine_image(K, ex.identity(K.dim), t, instance)
    rep.check_id = "translation"
    return rep


def check_unconditional_dilate(K, m: int, instance: Optional[dict] = None) -> CheckReport:
    """``#(m K) <= (2m-1)^n #(K)`` for unconditional ``K``."""
    inst = {**_instance(K, instance), "m": m}
    if not K.is_unconditional:
        return CheckReport.inapplicable("unconditional_dilate", inst, "body is not unconditional")
    n = K.dim
    big = ct.count(bd.dilate(K, m), keep_points=False).count
    total = ct.count(K, keep_points=False).count
    return CheckReport.compare(
        "unconditional_dilate", inst, big, "<=", (2 * m - 1) ** n * total,
        constants={"factor": (2 * m - 1) ** n}, witnesses={"dilate_count": big, "count": total},
    )


def check_sumset(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]], instance: Optional[dict] = None) -> CheckReport:
    """``|A + B| >= |A| + |B| - 1`` for finite nonempty integer sets."""
    A = {tuple(a) for a in A}
    B = {tuple(b) for b in B}
    S = {tuple(x + y for x, y in zip(a, b)) for a in A for b in B}
    inst = instance or {"A": sorted(A), "B": sorted(B)}
    return CheckReport.compare("sumset", inst, len(S), ">=", len(A) + len(B) - 1)


# --------------------------------------------------------------------------
# projections


def _primitive_int(v):
    g = reduce(gcd, v, 0)
    return tuple(x // abs(g) for x in v)


def preimage_set(K, v) -> tuple[list, list]:
    """Projected-lattice points of ``K | v^perp`` and the subset ``A`` of nonzero points ``x``
    whose line through the origin meets at least five of them (``2 * primitive(x)`` inside)."""
    proj = bd.project(K, v)
    pts = ct.integer_points(proj)
    A = [x for x in pts if any(x) and proj.contains(tuple(2 * c for c in _primitive_int(x)))]
    return pts, A


def check_preimages(K, v: Sequence[int], instance: Optional[dict] = None) -> CheckReport:
    """``#(K|v^perp) <= 6 * 4^(n-1) |(K cap Z^n)|v^perp|`` for ``v`` in ``K``, symmetric ``K``."""
    inst = {**_instance(K, instance), "v": list(v)}
    if not K.is_origin_symmetric:
        return CheckReport.inapplicable("preimages", inst, "body is not origin-symmetric")
    v = tuple(int(x) for x in v)
    if not any(v) or not K.contains(v):
        return CheckReport.inapplicable("preimages", inst, "v must be a nonzero lattice point of K")
    n = K.dim
    proj_pts, A = preimage_set(K, v)
    lifted = ct.count_projected_points(K, v).count
    c = 4 ** (n - 1)
    rep = CheckReport.compare(
        "preimages", inst, len(proj_pts), "<=", 6 * c * lifted,
        constants={"factor": 6 * c},
        witnesses={"projection_count": len(proj_pts), "projected_points": lifted, "A_size": len(A)},
    )
    rep.subreports.append(CheckReport.compare("preimages_A", inst, len(A), "<=", 3 * lifted, constants={"factor": 3}))
    if A:
        rep.subreports.append(
            CheckReport.compare("preimages_cosets", inst, len(proj_pts), "<=", c * 2 * len(A), constants={"factor": 2 * c})
        )
    else:
        rep.subreports.append(
            CheckReport.compare("preimages_cosets", inst, len(proj_pts), "<=", c, constants={"factor": c})
        )
    return rep


def check_reverse_lw(K, instance: Optional[dict] = None) -> CheckReport:
    """``prod_i #(K | v_i^perp) <= C #(K)^(n-1)`` along the successive-minima directions.

    ``C = (6 4^(n-1))^n 4^(n^2) (4/3)^n 3^((n-1)/2)``; compared after squaring.
    """
    inst = _instance(K, instance)
    if not K.is_origin_symmetric:
        return CheckReport.inapplicable("reverse_lw", inst, "body is not origin-symmetric")
    if not K.is_full_dimensional:
        return CheckReport.inapplicable("reverse_lw", inst, "body is not full-dimensional")
    n = K.dim
    prof = successive_minima(K)
    if prof.minima[-1] > 1:
        return CheckReport.inapplicable("reverse_lw", inst, "lambda_n > 1: K has fewer than n independent lattice points")
    vs = [ex.to_int_vector(w) for w in prof.witnesses]
    total = ct.count(K, keep_points=False).count
    proj_counts = [ct.count_projection(K, v).count for v in vs]
    lifted = [ct.count_projected_points(K, v).count for v in vs]
    base = Fraction(6 * 4 ** (n - 1)) ** n * 4 ** (n * n) * Fraction(4, 3) ** n
    lhs = prod(proj_counts) ** 2
    rhs = base**2 * 3 ** (n - 1) * total ** (2 * (n - 1))
    rep = CheckReport.compare(
        "reverse_lw", inst, lhs, "<=", rhs,
        constants={"factor_squared": base**2 * 3 ** (n - 1)},
        witnesses={"directions": vs, "minima": list(prof.minima), "projection_counts": proj_counts,
                   "projected_point_counts": lifted, "count": total},
        notes=["both sides squared to clear the sqrt(3)^(n-1) factor"],
    )
    for v in vs:
        rep.subreports.append(check_preimages(K, v, inst))
    # |Z|v^perp| chain, squared
    chain = Fraction(4 ** (n * n)) * Fraction(4, 3) ** n
    rep.subreports.append(
        CheckReport.compare("projected_points_product", inst, prod(lifted) ** 2, "<=",
                            chain**2 * 3 ** (n - 1) * total ** (2 * (n - 1)))
    )
    rep.subreports.append(_malikiosis(K, prof.minima, total, inst))
    return rep


# --------------------------------------------------------------------------
# slicing


def check_slicing(K, normal_bound: int = 3, instance: Optional[dict] = None) -> CheckReport:
    """``#(K)^(n-1) <= c_n M^n`` with ``M`` the largest lattice hyperplane section found.

    ``c_n = (n!)^2 4^n`` for symmetric bodies and ``16^n n! (n+1)^n`` otherwise.
    """
    inst = _instance(K, instance)
    n = K.dim
    P = ct._points_array(K)
    pts = [tuple(int(x) for x in p) for p in P.tolist()]
    if integer_affine_dim(pts) < n:
        return CheckReport.inapplicable("slicing", inst, "lattice points of K lie in a hyperplane")
    total = len(pts)
    best = ct.max_section_global(K, normal_bound, points=P)
    sym = K.is_origin_symmetric
    const = factorial(n) ** 2 * 4**n if sym else 16**n * factorial(n) * (n + 1) ** n
    rep = CheckReport.compare(
        "slicing", inst, total ** (n - 1), "<=", const * best.count**n,
        constants={"factor": const, "branch": "symmetric" if sym else "general"},
        witnesses={"count": total, "normal": best.normal, "level": best.level, "section_count": best.count,
                   "slice_ratio": Fraction(total ** (n - 1), best.count**n)},
        bounds={"normal_bound": normal_bound, "normals_scanned": best.normals_scanned},
        notes=["maximum over normals with sup-norm <= normal_bound only"],
    )
    if not sym:
        rep.subreports.extend(_difference_body_chain(K, P, total, inst))
        c = bd.centroid(K)
        half = bd.dilate(bd.translate(K, c), Fraction(1, 2))
        has_point = ct.count(half, keep_points=False).count > 0
        rep.witnesses["centroid"] = c
        if not has_point:
            rep.notes.append("flatness branch not exercised: (c+K)/2 has no lattice point; verdict from the global maximum")
        else:
            rep.notes.append("(c+K)/2 contains a lattice point; flatness theorem not needed")
    return rep


def _difference_body_chain(K, P, total: int, inst: dict) -> list[CheckReport]:
    n = K.dim
    D = bd.difference_body(K)
    prof = successive_minima(bd.polar(D))
    lam = prof.minima[0]
    y = ex.to_int_vector(prof.witnesses[0])
    scan = ct.max_section_over_levels(K, y, points=P)
    diff_count = ct.count(D, keep_points=False).count
    return [
        CheckReport.compare("slicing_levels", inst, total, "<=", (2 * lam + 1) * scan.best_count,
                            witnesses={"lambda_star": lam, "normal": y, "level": scan.best_level,
                                       "section_count": scan.best_count}),
        CheckReport.compare("slicing_difference_body", inst, total**n, "<=",
                            factorial(n) * 4**n * diff_count * scan.best_count**n,
                            witnesses={"difference_body_count": diff_count}),
    ]


# --------------------------------------------------------------------------
# successive minima / volume toolbox


def _malikiosis(K, minima, total: int, inst: dict) -> CheckReport:
    n = len(minima)
    factors = [floor(2 / lam + 1) for lam in minima]
    return CheckReport.compare(
        "malikiosis", inst, total**2, "<=", 3 ** (n - 1) * prod(factors) ** 2,
        witnesses={"floor_factors": factors}, notes=["squared form"],
    )


def check_toolbox(K, lat: Optional[Lattice] = None, instance: Optional[dict] = None) -> CheckReport:
    """Classical successive-minima and volume bounds on one symmetric polytope."""
    inst = _instance(K, instance)
    n = K.dim
    lat = lat or Lattice.standard(n)
    if lat.basis != ex.identity(n):
        inst = {**inst, "lattice": [list(c) for c in lat.vectors]}
    if not K.is_origin_symmetric or not K.is_full_dimensional:
        return CheckReport.inapplicable("toolbox", inst, "needs a full-dimensional origin-symmetric polytope")
    det = lat.det
    dual = polar_lattice(lat)
    Kp = bd.polar(K)
    vol = bd.volume(K)
    vol_p = bd.volume(Kp)
    prof = successive_minima(K, lat)
    prof_p = successive_minima(Kp, dual)
    lam = prof.minima
    total = ct.count(K, AffineLattice(lat), keep_points=False).count
    pts = ct.count(K, AffineLattice(lat)).points
    subs = [
        CheckReport.compare("minkowski_lower", inst, Fraction(2**n, factorial(n)) * det, "<=", prod(lam) * vol),
        CheckReport.compare("minkowski_upper", inst, prod(lam) * vol, "<=", 2**n * det),
        _malikiosis(K, lam, total, inst),
        CheckReport.compare("van_der_corput", inst, vol, "<=", 2 ** (n - 1) * (total + 1) * det),
    ]
    if pts is not None and integer_affine_dim(list(pts)) == n:
        subs.append(CheckReport.compare("blichfeldt", inst, vol, ">=", Fraction(total - n, factorial(n)) * det))
    else:
        subs.append(CheckReport.inapplicable("blichfeldt", inst, "lattice points of K lie in a hyperplane"))
    for i in range(n):
        subs.append(CheckReport.compare(f"minima_duality_{i + 1}", inst, prof_p.minima[i] * lam[n - 1 - i], ">=", 1))
    subs.append(CheckReport.compare("volume_product", inst, vol * vol_p, ">=", Fraction(3**n, factorial(n))))
    mb = mahler_basis(K, lat)
    for i, g in enumerate(mb.gauge_values):
        subs.append(CheckReport.compare(f"mahler_basis_{i + 1}", inst, g, "<=", mb.bound(i)))
    failed = sum(1 for s in subs if not s.ok)
    return CheckReport(
        "toolbox", inst, failed, "==", 0, "holds" if failed == 0 else "fails", None,
        witnesses={"minima": list(lam), "polar_minima": list(prof_p.minima), "volume": vol,
                   "polar_volume": vol_p, "count": total, "mahler_basis": list(mb.vectors)},
        notes=["lhs counts failed sub-checks"], subreports=subs,
    )


def check_vol_approx(K, r_list: Sequence[int], band=None, instance: Optional[dict] = None) -> CheckReport:
    """``|#(rK)/r^n - vol(K)|`` shrinks along ``r_list`` and is within ``band`` at the largest ``r``.

    The default band is ``vol(K) (2n+1) / r_max``.
    """
    inst = {**_instance(K, instance), "r_list": list(r_list)}
    n = K.dim
    if not K.is_full_dimensional:
        return CheckReport.inapplicable("vol_approx", inst, "needs a full-dimensional body")
    vol = bd.volume(K)
    rs = sorted(set(int(r) for r in r_list))
    errors = []
    for r in rs:
        c = ct.count(bd.dilate(K, r), keep_points=False).count
        errors.append(abs(Fraction(c, r**n) - vol))
    r_max = rs[-1]
    band = Fraction(band) if band is not None else vol * (2 * n + 1) / r_max
    rep = CheckReport.compare(
        "vol_approx", inst, errors[-1], "<=", band,
        constants={"band": band}, witnesses={"volume": vol, "errors": dict(zip(rs, errors))},
    )
    if len(rs) > 1:
        rep.subreports.append(CheckReport.compare("vol_approx_trend", inst, errors[-1], "<", errors[0]))
    return rep


# --------------------------------------------------------------------------
# registry for the command line and sweeps

CHECK_IDS = (
    "discrete_lw", "discrete_meyer", "planar_meyer", "unconditional_meyer", "simplex_counterexample",
    "brunn", "translation", "affine_image", "unconditional_dilate", "preimages", "reverse_lw",
    "reverse_meyer", "slicing", "toolbox", "vol_approx",
)


def run_check(check_id: str, K, params: dict, instance: Optional[dict] = None) -> CheckReport:
    """Dispatch by id; ``params`` supplies check-specific arguments with defaults."""
    n = K.dim
    if check_id == "discrete_lw":
        return check_discrete_lw(K, instance)
    if check_id == "discrete_meyer":
        return check_discrete_meyer(K, instance)
    if check_id == "planar_meyer":
        return check_planar_meyer(K, instance)
    if check_id == "unconditional_meyer":
        return check_unconditional_meyer(K, instance)
    if check_id == "simplex_counterexample":
        return check_simplex_counterexample(int(params.get("k", 10)), n, instance)
    if check_id == "brunn":
        k = int(params.get("subspace_dim", params.get("k", n - 1)))
        spanning = params.get("subspace") or [_e(n, i) for i in range(k)]
        t = params.get("t") or _e(n, n - 1)
        return check_brunn(K, spanning, t, instance)
    if check_id == "translation":
        t = params.get("t") or tuple([Fraction(1, 2)] * (n - 1) + [Fraction(0)])
        return check_translation(K, t, instance)
    if check_id == "affine_image":
        A = params.get("A") or ex.identity(n)
        t = params.get("t") or tuple(Fraction(0) for _ in range(n))
        return check_affine_image(K, A, t, instance)
    if check_id == "unconditional_dilate":
        return check_unconditional_dilate(K, int(params.get("m", 2)), instance)
    if check_id == "preimages":
        v = params.get("v") or _e(n, n - 1)
        return check_preimages(K, v, instance)
    if check_id == "reverse_lw":
        return check_reverse_lw(K, instance)
    if check_id == "reverse_meyer":
        from .construct import reverse_meyer_construct

        return reverse_meyer_construct(K, instance=instance).report
    if check_id == "slicing":
        return check_slicing(K, int(params.get("normal_bound", 3)), instance)
    if check_id == "toolbox":
        return check_toolbox(K, instance=instance)
    if check_id == "vol_approx":
        return check_vol_approx(K, params.get("r_list") or [1, 2, 4, 8], params.get("band"), instance)
    raise KeyError(f"unknown check {check_id!r}; known: {', '.join(CHECK_IDS)}")
