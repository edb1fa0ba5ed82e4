"""Body families used by the checks, built from their vertex lists."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from .. import body as bd


def unit(n: int, i: int, scale=1) -> tuple:
    return tuple(scale if j == i else 0 for j in range(n))


def cube(n: int, half_width=1) -> bd.Polytope:
    a = Fraction(half_width)
    return bd.VPolytope(list(itertools.product((-a, a), repeat=n)))


def box(lows, highs) -> bd.Polytope:
    return bd.VPolytope(list(itertools.product(*[(Fraction(l), Fraction(h)) for l, h in zip(lows, highs)])))


def cross_polytope(n: int) -> bd.Polytope:
    return bd.VPolytope([unit(n, i, s) for i in range(n) for s in (1, -1)])


def simplex_T(k: int, n: int = 3) -> bd.Polytope:
    """``conv{0, e1, e1 + k e2, k e3}``, lifted by ``e4..en`` for ``n >= 4``."""
    if n < 3:
        raise ValueError("the simplex family needs n >= 3")
    pts = [(0, 0, 0), (1, 0, 0), (1, k, 0), (0, 0, k)]
    pts = [p + (0,) * (n - 3) for p in pts]
    pts += [unit(n, i) for i in range(3, n)]
    return bd.VPolytope(pts)


def double_pyramid(h: int, n: int = 3) -> bd.Polytope:
    """Double pyramid over ``[-1,1]^(n-1)`` with apexes ``+-h e_n``."""
    base = [c + (0,) for c in itertools.product((-1, 1), repeat=n - 1)]
    return bd.VPolytope(base + [unit(n, n - 1, h), unit(n, n - 1, -h)])


def long_box(k: int, n: int) -> bd.Polytope:
    """``1/2 [-1,1]^(n-1) x [-k + 1/2, k - 1/2]``."""
    half = Fraction(1, 2)
    return box([-half] * (n - 1) + [-k + half], [half] * (n - 1) + [k - half])


def shrunken_cube(m: int, n: int) -> bd.Polytope:
    return cube(n, 1 - Fraction(1, 2 * m))


def cross_h(h: int) -> bd.Polytope:
    return bd.VPolytope([(1, 0), (-1, 0), (0, h), (0, -h)])


def slab(n: int) -> bd.Polytope:
    """``conv(+-([0,1]^(n-1) x {1}))``."""
    top = [c + (1,) for c in itertools.product((0, 1), repeat=n - 1)]
    return bd.VPolytope(top + [tuple(-x for x in p) for p in top])


def binary_normal(n: int) -> tuple:
    return tuple(2**i for i in range(n))


def cube_section(n: int) -> bd.Polytope:
    """``C_n`` cut by the hyperplane orthogonal to ``(1, 2, ..., 2^(n-1))``."""
    u = binary_normal(n)
    A = [unit(n, i) for i in range(n)] + [unit(n, i, -1) for i in range(n)] + [u, tuple(-x for x in u)]
    b = [1] * (2 * n) + [0, 0]
    return bd.VPolytope(bd.HPolytope(A, b).vertices)


def cube_section_pyramid(n: int) -> bd.Polytope:
    """``conv((C_n cap u^perp) cup {+-e_n})`` for the binary normal ``u``."""
    pts = list(cube_section(n).vertices) + [unit(n, n - 1), unit(n, n - 1, -1)]
    return bd.VPolytope(pts)


def flat_square(n: int = 3) -> bd.Polytope:
    """``[-1,1]^2 x {0}``: symmetric but lower-dimensional."""
    return bd.VPolytope([(a, b) + (0,) * (n - 2) for a in (-1, 1) for b in (-1, 1)])


def _rng(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng([seed, index])


def random_symmetric(n: int, s: int, R: int, seed: int, index: int = 0) -> bd.Polytope:
    """``conv(+-P)`` for ``s`` uniform points of ``[-R,R]^n``; resampled until full-dimensional."""
    rng = _rng(seed, index)
    while True:
        P = rng.integers(-R, R + 1, size=(s, n)).tolist()
        pts = [tuple(p) for p in P] + [tuple(-x for x in p) for p in P]
        if any(any(p) for p in pts):
            K = bd.VPolytope(pts)
            if K.is_full_dimensional:
                return K


def random_unconditional(n: int, s: int, R: int, seed: int, index: int = 0) -> bd.Polytope:
    """Hull of all coordinate sign flips of ``s`` points of ``[0,R]^n``."""
    rng = _rng(seed, index)
    while True:
        P = rng.integers(0, R + 1, size=(s, n)).tolist()
        pts = set()
        for p in P:
            for signs in itertools.product((1, -1), repeat=n):
                pts.add(tuple(x * e for x, e in zip(p, signs)))
        K = bd.VPolytope(sorted(pts))
        if K.is_full_dimensional:
            return K


def random_polygon(s: int, R: int, seed: int, index: int = 0) -> bd.Polytope:
    """Lattice polygon: hull of ``s`` uniform points of ``[-R,R]^2``, full-dimensional."""
    rng = _rng(seed, index)
    while True:
        P = [tuple(p) for p in rng.integers(-R, R + 1, size=(s, 2)).tolist()]
        K = bd.VPolytope(P)
        if K.is_full_dimensional:
            return K


def random_rational_vector(n: int, denominator: int, seed: int, index: int = 0) -> tuple:
    rng = _rng(seed, index)
    return tuple(Fraction(int(x), denominator) for x in rng.integers(0, denominator, size=n))


# --------------------------------------------------------------------------
# registry


@dataclass(frozen=True)
class FamilySpec:
    builder: Callable
    params: tuple  # parameter names in builder order
    defaults: dict = field(default_factory=dict)
    random: bool = False


FAMILIES: dict[str, FamilySpec] = {
    "T_k": FamilySpec(lambda k, n: simplex_T(k, n), ("k", "n"), {"k": 10, "n": 3}),
    "K_h": FamilySpec(lambda h, n: double_pyramid(h, n), ("h", "n"), {"h": 10, "n": 3}),
    "Q_k": FamilySpec(lambda k, n: long_box(k, n), ("k", "n"), {"k": 3, "n": 3}),
    "cube": FamilySpec(lambda n: cube(n), ("n",), {"n": 3}),
    "cross": FamilySpec(lambda n: cross_polytope(n), ("n",), {"n": 3}),
    "cross_h": FamilySpec(lambda h: cross_h(h), ("h",), {"h": 10}),
    "slab": FamilySpec(lambda n: slab(n), ("n",), {"n": 4}),
    "cube_section_u": FamilySpec(lambda n: cube_section_pyramid(n), ("n",), {"n": 3}),
    "shrunken_cube": FamilySpec(lambda m, n: shrunken_cube(m, n), ("m", "n"), {"m": 2, "n": 3}),
    "flat_square": FamilySpec(lambda n: flat_square(n), ("n",), {"n": 3}),
    "random_sym": FamilySpec(
        lambda n, s, R, seed, index: random_symmetric(n, s, R, seed, index),
        ("n", "s", "R", "seed", "index"), {"n": 3, "s": 4, "R": 3, "index": 0}, True,
    ),
    "random_uncond": FamilySpec(
        lambda n, s, R, seed, index: random_unconditional(n, s, R, seed, index),
        ("n", "s", "R", "seed", "index"), {"n": 3, "s": 2, "R": 3, "index": 0}, True,
    ),
    "random_polygon": FamilySpec(
        lambda s, R, seed, index: random_polygon(s, R, seed, index),
        ("s", "R", "seed", "index"), {"s": 5, "R": 4, "index": 0}, True,
    ),
}


@dataclass(frozen=True)
class FamilyInstance:
    family_id: str
    params: tuple  # sorted (name, value) pairs

    @classmethod
    def make(cls, family_id: str, **params) -> "FamilyInstance":
        if family_id not in FAMILIES:
            raise KeyError(f"unknown family {family_id!r}; known: {', '.join(sorted(FAMILIES))}")
        spec = FAMILIES[family_id]
        full = dict(spec.defaults)
        full.update({k: v for k, v in params.items() if k in spec.params and v is not None})
        missing = [p for p in spec.params if p not in full]
        if missing:
            raise ValueError(f"family {family_id} needs parameter(s) {', '.join(missing)}")
        return cls(family_id, tuple(sorted((p, full[p]) for p in spec.params)))

    @property
    def param_dict(self) -> dict:
        return dict(self.params)

    def build(self) -> bd.Body:
        spec = FAMILIES[self.family_id]
        d = self.param_dict
        return spec.builder(*[d[p] for p in spec.params])

    def describe(self) -> dict:
        return {"family": self.family_id, **self.param_dict}
