"""Exploratory slicing ratios of centred balls in a user-supplied lattice."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .. import body as bd
from .. import counting as ct
from ..lattice import Lattice
from .report import INAPPLICABLE, CheckReport


def ball_in_coordinates(lat: Lattice, r) -> bd.Quadric:
    """``r B_n`` written in the basis coordinates of ``lat``: ``c^T (B^T B) c <= r^2``."""
    r = Fraction(r)
    return bd.Quadric(lat.gram, None, -r * r)


def slicing_ratio_scan(lat: Lattice, r_list: Sequence, normal_bound: int = 2) -> CheckReport:
    """For each radius: ``#_L(rB)``, the largest lattice hyperplane section found and
    ``#^(n-1) / max^n``.

    Lattice hyperplanes are ``{<b, x> = j}`` with ``b`` primitive in the polar
    lattice; in basis coordinates these are integer functionals, scanned up
    to sup-norm ``normal_bound``.  No threshold is asserted.
    """
    n = lat.rank
    rows = []
    for r in r_list:
        K = ball_in_coordinates(lat, r)
        P = ct._points_array(K)
        total = len(P)
        best = ct.max_section_global(K, normal_bound, points=P)
        rows.append({
            "r": Fraction(r), "count": total, "normal": best.normal, "level": best.level,
            "section_count": best.count, "ratio": Fraction(total ** (n - 1), best.count**n),
        })
    inst = {"lattice": [list(c) for c in lat.vectors], "r_list": [Fraction(r) for r in r_list]}
    return CheckReport(
        "slicing_scan", inst, verdict=INAPPLICABLE,
        witnesses={"rows": rows}, bounds={"normal_bound": normal_bound},
        notes=["exploratory scan: trends only, no threshold asserted"],
    )


def d4_basis() -> list[tuple[int, ...]]:
    """A basis of the checkerboard lattice ``D_4`` (integer points with even coordinate sum)."""
    return [(1, -1, 0, 0), (0, 1, -1, 0), (0, 0, 1, -1), (0, 0, 1, 1)]
