"""Constructive basis with large translated sections.

For an origin-symmetric body ``K`` and a lattice ``L`` this finds a basis
``b_1..b_n`` of the polar lattice and translates ``t_i`` in ``L`` with
``#(K)^(n-1) <= (n!)^2 4^n prod_i #(K cap (t_i + b_i^perp))``.

If the lattice points of ``K`` span the space, the basis is a Mahler-type
basis of the polar lattice for the polar body and every translate is the
best level of :func:`~latslice.counting.max_section_over_levels`.  Otherwise
all lattice points lie in a lattice hyperplane ``H``; the construction
recurses into ``K cap H`` with coordinates of ``L cap H``, lifts the
resulting functionals back and appends the primitive normal of ``H``.

Everything runs in lattice coordinates, where ``L`` is ``Z^n`` and the polar
lattice is ``Z^n`` acting by the dot product.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial, prod
from typing import Optional

from .. import body as bd
from .. import counting as ct
from .. import exact as ex
from ..lattice import Lattice, mahler_basis, polar_lattice
from .checks import _instance, integer_rank
from .report import CheckReport


@dataclass(frozen=True)
class SectionStep:
    functional: tuple  # integer coordinates of b_i in the polar basis
    level: int
    count: int
    branch: str  # "full" or "hyperplane"


@dataclass
class Construction:
    basis: list  # b_i in ambient coordinates
    translates: list  # t_i in ambient coordinates
    levels: list
    section_counts: list
    report: CheckReport


def _standard(n: int, i: int) -> tuple:
    return tuple(int(i == j) for j in range(n))


def _construct(K) -> list[SectionStep]:
    d = K.dim
    pts = ct.integer_points(K)
    r = integer_rank(pts)
    if r == d:
        mb = mahler_basis(bd.polar(K))
        steps = []
        P = ct._points_array(K)
        for w in mb.vectors:
            w = ex.to_int_vector(w)
            scan = ct.max_section_over_levels(K, w, points=P)
            steps.append(SectionStep(w, scan.best_level, scan.best_count, "full"))
        return steps
    if d == 1:
        return [SectionStep((1,), 0, len(pts), "hyperplane")]
    # a lattice hyperplane through the lattice points (and through lin K if K is flat)
    if isinstance(K, bd.Polytope) and not K.is_full_dimensional:
        spanning = [v for v in K.vertices if any(v)]
    else:
        spanning = [p for p in pts if any(p)]
    if spanning:
        normals = ex.integer_kernel(ex.mat(spanning))
    else:
        normals = [_standard(d, i) for i in range(d)]
    normal = ex.canonical_sign(ex.canonical_basis(normals)[0])
    normal = ex.to_int_vector(ex.primitive(normal))
    G = ex.canonical_basis(ex.integer_kernel(ex.mat([normal])))
    sub = bd.restrict(K, tuple(0 for _ in range(d)), G)
    sub_steps = _construct(sub)
    (g,) = ex.complete_to_unimodular(G)
    U = ex.from_columns(list(G) + [g])
    Uinv_T = ex.transpose(ex.inverse(U))
    steps = []
    for s in sub_steps:
        b = ex.to_int_vector(ex.matvec(Uinv_T, tuple(s.functional) + (0,)))
        steps.append(SectionStep(b, s.level, s.count, "hyperplane"))
    steps.append(SectionStep(normal, 0, len(pts), "hyperplane"))
    return steps


def reverse_meyer_construct(K, lat: Optional[Lattice] = None, instance: Optional[dict] = None) -> Construction:
    inst = _instance(K, instance)
    n = K.dim
    lat = lat or Lattice.standard(n)
    if not K.is_origin_symmetric:
        rep = CheckReport.inapplicable("reverse_meyer", inst, "body is not origin-symmetric")
        return Construction([], [], [], [], rep)
    Kc = K if lat.is_standard() else bd.linear_image(K, ex.inverse(lat.basis))
    steps = _construct(Kc)
    total = len(ct.integer_points(Kc))
    # independent recount of every section, and translates with <b_i, t_i> = level_i
    counts, translates = [], []
    P = ct._points_array(Kc)
    for s in steps:
        counts.append(ct.count_section(Kc, s.functional, s.level).count)
        t0, _ = bd.hyperplane_frame(s.functional, s.level)
        translates.append(lat.point(t0))
    dual = polar_lattice(lat)
    basis = [dual.point(s.functional) for s in steps]
    det = abs(ex.determinant(ex.from_columns([s.functional for s in steps])))
    const = factorial(n) ** 2 * 4**n
    rep = CheckReport.compare(
        "reverse_meyer", inst, total ** (n - 1), "<=", const * prod(counts),
        constants={"factor": const},
        witnesses={"basis": basis, "translates": translates, "levels": [s.level for s in steps],
                   "section_counts": counts, "branches": [s.branch for s in steps], "count": total},
    )
    recorded = [s.count for s in steps]
    rep.subreports.append(CheckReport("reverse_meyer_recount", inst, counts, "==", recorded,
                                      "holds" if counts == recorded else "fails"))
    rep.subreports.append(CheckReport.compare("reverse_meyer_unimodular", inst, det, "==", 1,
                                              notes=["|det| of the basis in polar-lattice coordinates"]))
    central = [ct.count_section(Kc, s.functional, 0).count for s in steps]
    hom = const * 2 ** (n * (n - 1))
    rep.subreports.append(CheckReport.compare(
        "reverse_meyer_homogeneous", inst, total ** (n - 1), "<=", hom * prod(central),
        constants={"factor": hom}, witnesses={"central_counts": central},
    ))
    return Construction(basis, translates, [s.level for s in steps], counts, rep)
