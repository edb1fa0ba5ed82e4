"""Seeded searches for extreme ratios and conjecture probes (evidence only)."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import prod
from typing import Optional, Sequence

from .. import body as bd
from .. import counting as ct
from .checks import coordinate_sections, describe_body
from .families import random_polygon, random_rational_vector, random_symmetric
from .report import CheckReport, to_jsonable

# ratio definition and which end of the order is "worst"
FUZZ_RATIOS = {
    "discrete_meyer": "lowest",  # #(K)^(n-1) / prod #(K cap e_i^perp); conjectured floor 3^(1-n)
    "translation": "highest",  # #(K + t) / #(K); conjectured ceiling 2^(n-2)
    "unconditional_dilate": "highest",  # #(mK) / ((2m-1)^n #(K)); conjectured ceiling 1
}


def meyer_ratio(K) -> Fraction:
    n = K.dim
    total = ct.count(K, keep_points=False).count
    return Fraction(total ** (n - 1), prod(coordinate_sections(K)))


def translation_ratio(K, t: Sequence) -> Fraction:
    moved = ct.count(bd.translate(K, t), keep_points=False).count
    return Fraction(moved, ct.count(K, keep_points=False).count)


def dilate_ratio(K, m: int) -> Fraction:
    n = K.dim
    big = ct.count(bd.dilate(K, m), keep_points=False).count
    return Fraction(big, (2 * m - 1) ** n * ct.count(K, keep_points=False).count)


def default_translate(n: int) -> tuple:
    return tuple([Fraction(1, 2)] * (n - 1) + [Fraction(0)])


@dataclass
class Leaderboard:
    check_id: str
    order: str
    params: dict
    entries: list = field(default_factory=list)  # dicts with index, ratio, vertices

    def to_dict(self) -> dict:
        """JSON-ready form with rationals as ``"p/q"`` strings."""
        return to_jsonable(
            {"check_id": self.check_id, "order": self.order, "params": self.params, "entries": self.entries}
        )


def fuzz_extremal(
    check_id: str, n: int = 3, s: int = 4, R: int = 3, seed: int = 0, budget: int = 100,
    top: int = 10, m: int = 2, t: Optional[Sequence] = None,
) -> Leaderboard:
    """Evaluate a ratio on ``budget`` seeded random symmetric lattice polytopes and keep the worst ``top``.

    Entries are ordered by exact ratio, then by instance index, so the result
    depends only on the arguments.
    """
    if check_id not in FUZZ_RATIOS:
        raise KeyError(f"no fuzz ratio for {check_id!r}; known: {', '.join(FUZZ_RATIOS)}")
    order = FUZZ_RATIOS[check_id]
    t = tuple(Fraction(x) for x in t) if t is not None else default_translate(n)
    scored = []
    for i in range(budget):
        K = random_symmetric(n, s, R, seed, i)
        if check_id == "discrete_meyer":
            r = meyer_ratio(K)
        elif check_id == "translation":
            r = translation_ratio(K, t)
        else:
            r = dilate_ratio(K, m)
        scored.append((r, i, K))
    sign = 1 if order == "lowest" else -1
    scored.sort(key=lambda e: (sign * e[0], e[1]))
    entries = [{"index": i, "ratio": r, "ratio_float": float(r), **describe_body(K)} for r, i, K in scored[:top]]
    params = {"n": n, "s": s, "R": R, "seed": seed, "budget": budget, "top": top}
    if check_id == "translation":
        params["t"] = list(t)
    if check_id == "unconditional_dilate":
        params["m"] = m
    return Leaderboard(check_id, order, params, entries)


def wills_probe(count: int = 100, s: int = 5, R: int = 4, seed: int = 0, denominator: int = 7) -> list[CheckReport]:
    """``#(P + t) <= #(P)`` for seeded random lattice polygons and rational translates."""
    reports = []
    for i in range(count):
        P = random_polygon(s, R, seed, i)
        t = random_rational_vector(2, denominator, seed + 1, i)
        moved = ct.count(bd.translate(P, t), keep_points=False).count
        total = ct.count(P, keep_points=False).count
        inst = {"family": "random_polygon", "s": s, "R": R, "seed": seed, "index": i, "t": list(t)}
        reports.append(CheckReport.compare("wills_planar", inst, moved, "<=", total))
    return reports
