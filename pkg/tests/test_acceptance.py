"""Acceptance suite: one printed PASS/FAIL line per criterion."""

from __future__ import annotations

import itertools
import time
from fractions import Fraction
from math import floor, prod

import numpy as np

from latslice import body as bd
from latslice import cli
from latslice import counting as ct
from latslice import exact as ex
from latslice.harness import checks as ck
from latslice.harness import families as fm
from latslice.harness.construct import reverse_meyer_construct
from latslice.harness.fuzz import translation_ratio, wills_probe
from latslice.harness.scan import d4_basis, slicing_ratio_scan
from latslice.lattice import Lattice, successive_minima

SEED = 20240611


def sections(K):
    return [ct.count_section(K, fm.unit(K.dim, i), 0).count for i in range(K.dim)]


# -- 1 -----------------------------------------------------------------------


def test_criterion_1_closed_form_counts(criterion):
    start = time.perf_counter()
    bad = []
    for k in range(1, 51):
        T = fm.simplex_T(k)
        got = (ct.count_points(T), sections(T))
        if got != (2 * (k + 1), [k + 1, k + 2, k + 2]):
            bad.append(("T_k", k, got))
    for n in (3, 4):
        for h in range(1, 101):
            K = fm.double_pyramid(h, n)
            want = (3 ** (n - 1) + 2 * h, [3 ** (n - 2) + 2 * h] * (n - 1) + [3 ** (n - 1)])
            got = (ct.count_points(K), sections(K))
            if got != want:
                bad.append(("K_h", n, h, got))
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 10
    criterion(1, ok, f"T_k k=1..50 and K_h n=3,4 h=1..100 exact, mismatches={len(bad)}, {elapsed:.1f}s (limit 10s)")
    assert not bad, bad[:3]
    assert elapsed < 10


# -- 2 -----------------------------------------------------------------------


def test_criterion_2_meyer_limit(criterion):
    start = time.perf_counter()
    h, n = 10**4, 3
    K = fm.double_pyramid(h, n)
    total = ct.count_points(K)
    secs = sections(K)
    elapsed = time.perf_counter() - start
    # the limit 1/3^(n-1) belongs to #(K)^(n-1) / prod #(K cap e_i^perp); the reciprocal tends to 9
    ratio = Fraction(total ** (n - 1), prod(secs))
    rel = abs(ratio / Fraction(1, 9) - 1)
    ok = rel <= Fraction(1, 100) and elapsed < 60
    criterion(
        2, ok,
        f"#(K_h)^2/prod sections = {float(ratio):.6f} vs 1/9, rel err {float(rel):.2e} (tol 1e-2); "
        f"prod/#^2 = {float(1 / ratio):.4f}; {elapsed:.2f}s (limit 60s)",
    )
    assert ok


# -- 3 -----------------------------------------------------------------------


def test_criterion_3_sharpness_witnesses(criterion):
    bad = []
    half = Fraction(1, 2)
    for n in (2, 3, 4):
        for k in range(1, 21):
            Q = fm.long_box(k, n)
            got = (ct.count_points(Q), ct.count_points(bd.translate(Q, (half,) * n)))
            if got != (2 * k - 1, 2 ** (n - 1) * 2 * k):
                bad.append(("Q_k", n, k, got))
    for m in (2, 3, 4):
        for n in (2, 3):
            K = fm.shrunken_cube(m, n)
            if ct.count_points(bd.dilate(K, m)) != (2 * m - 1) ** n * ct.count_points(K):
                bad.append(("shrunken", m, n))
    n = 4
    for k in (1, 2, 3):
        rep = ck.check_brunn(fm.slab(n), [fm.unit(n, i) for i in range(k)], fm.unit(n, n - 1))
        if not (rep.lhs_power == 2**k and rep.witnesses["central_count"] == 1):
            bad.append(("slab", k, rep.lhs_power))
    criterion(3, not bad, f"Q_k, Q_k+t, shrunken cubes, slab tightness exact; mismatches={len(bad)}")
    assert not bad, bad


# -- 4 -----------------------------------------------------------------------


def test_criterion_4_cube_sections(criterion):
    bad = []
    for n in (3, 4, 5):
        C, u = fm.cube(n), fm.binary_normal(n)
        got = (ct.count_section(C, u, 0).count, ct.count_section(C, u, 1).count)
        if got != (1, n):
            bad.append(("section", n, got))
        K, e = fm.cube_section_pyramid(n), fm.unit(n, n - 1)
        got = (ct.count_projection(K, e).count, ct.count_projected_points(K, e).count)
        if got != (3 ** (n - 1), 1):
            bad.append(("projection", n, got))
    criterion(4, not bad, f"cube sections along (1,2,..,2^(n-1)) and projection counts for n=3,4,5; mismatches={len(bad)}")
    assert not bad, bad


# -- 5 -----------------------------------------------------------------------


def naive_count(K):
    ranges = []
    for i in range(K.dim):
        e = fm.unit(K.dim, i)
        ranges.append(range(-floor(K.support(tuple(-x for x in e))), floor(K.support(e)) + 1))
    return sum(1 for p in itertools.product(*ranges) if K.contains(p))


def test_criterion_5_oracle_equivalence(criterion):
    start = time.perf_counter()
    rng = np.random.default_rng(SEED)
    bad = []
    bodies = 0
    for index in range(200):
        n = 2 + index % 3
        K = fm.random_symmetric(n, 4, 3, seed=SEED, index=index)
        bodies += 1
        total = ct.count_points(K)
        if total != naive_count(K):
            bad.append(("count", n, index))
        normals = set()
        while len(normals) < 3:
            b = tuple(int(x) for x in rng.integers(-3, 4, size=n))
            if any(b):
                normals.add(ex.canonical_sign(ex.primitive(b)))
        for b in sorted(normals):
            lo = -floor(K.support(tuple(-x for x in b)))
            hi = floor(K.support(b))
            if sum(ct.count_section(K, b, j).count for j in range(lo, hi + 1)) != total:
                bad.append(("fubini", n, index, b))
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 300
    criterion(5, ok, f"{bodies} random bodies in dims 2-4: naive scan and Fubini over 3 normals, "
                     f"mismatches={len(bad)}, {elapsed:.1f}s (limit 300s)")
    assert not bad, bad[:3]
    assert elapsed < 300


# -- 6 -----------------------------------------------------------------------


def family_corpus():
    bodies = []
    for n in (2, 3, 4):
        bodies += [(f"cube n={n}", fm.cube(n)), (f"cross n={n}", fm.cross_polytope(n))]
    for h in (1, 5, 40):
        bodies += [(f"K_h n=3 h={h}", fm.double_pyramid(h, 3)), (f"cross_h h={h}", fm.cross_h(h))]
    bodies += [("K_h n=4 h=7", fm.double_pyramid(7, 4))]
    bodies += [(f"T_k k={k}", fm.simplex_T(k)) for k in (1, 4, 20)]
    bodies += [("T_k n=4 k=3", fm.simplex_T(3, 4))]
    bodies += [(f"Q_k n={n} k=3", fm.long_box(3, n)) for n in (2, 3, 4)]
    bodies += [(f"shrunken m={m} n=3", fm.shrunken_cube(m, 3)) for m in (2, 3)]
    bodies += [(f"slab n={n}", fm.slab(n)) for n in (3, 4)]
    bodies += [(f"cube_section_u n={n}", fm.cube_section_pyramid(n)) for n in (3, 4)]
    bodies += [("flat_square", fm.flat_square(3))]
    return bodies


def random_regular_matrix(rng, n):
    while True:
        A = [[int(x) for x in row] for row in rng.integers(-2, 3, size=(n, n))]
        if ex.determinant(A) != 0:
            return A


def corpus_reports(name, K, rng):
    """Every applicable check on one body (inapplicable ones are reported as such)."""
    n = K.dim
    out = []
    pts = ct.integer_points(K)
    sym = K.is_origin_symmetric
    full = K.is_full_dimensional
    out.append(ck.check_discrete_lw(K))
    out.append(ck.check_slicing(K, 3))
    if n == 2:
        out.append(ck.check_planar_meyer(K))
    if pts:
        other = [tuple(int(x) for x in rng.integers(-3, 4, size=n)) for _ in range(int(rng.integers(1, 6)))]
        out.append(ck.check_sumset(pts, other))
    if sym:
        out.append(ck.check_discrete_meyer(K))
        for k in range(1, n):
            t = pts[int(rng.integers(len(pts)))]
            out.append(ck.check_brunn(K, [fm.unit(n, i) for i in range(k)], t))
            spanning = [tuple(int(x) for x in rng.integers(-2, 3, size=n)) for _ in range(k)]
            if ex.rank_of_vectors(spanning) == k:
                out.append(ck.check_brunn(K, spanning, t))
        A = random_regular_matrix(rng, n)
        t = tuple(Fraction(int(x), 4) for x in rng.integers(-4, 5, size=n))
        out.append(ck.check_affine_image(K, A, t))
        out.append(ck.check_translation(K, t))
        nonzero = [p for p in pts if any(p)]
        if nonzero:
            out.append(ck.check_preimages(K, nonzero[int(rng.integers(len(nonzero)))]))
        out.append(reverse_meyer_construct(K).report)
        if full:
            out.append(ck.check_reverse_lw(K))
            out.append(ck.check_toolbox(K))
    if K.is_unconditional:
        out.append(ck.check_unconditional_meyer(K))
        for m in (2, 3):
            out.append(ck.check_unconditional_dilate(K, m))
    return out


def test_criterion_6_inequality_suites(criterion):
    start = time.perf_counter()
    rng = np.random.default_rng(SEED)
    bodies = family_corpus()
    for n in (2, 3, 4):
        bodies += [(f"random_sym n={n} #{i}", fm.random_symmetric(n, 4, 3, seed=SEED, index=i)) for i in range(100)]
        bodies += [(f"random_uncond n={n} #{i}", fm.random_unconditional(n, 2, 3, seed=SEED, index=i)) for i in range(100)]
    bodies += [(f"random_polygon #{i}", fm.random_polygon(5, 4, seed=SEED, index=i)) for i in range(100)]
    failures = []
    tally = {}
    for name, K in bodies:
        for rep in corpus_reports(name, K, rng):
            stack = [rep]
            while stack:
                r = stack.pop()
                tally.setdefault(r.check_id, [0, 0, 0])
                slot = {"holds": 0, "fails": 1, "inapplicable": 2}[r.verdict]
                tally[r.check_id][slot] += 1
                if r.verdict == "fails":
                    failures.append((name, r.check_id, r.lhs_power, r.relation, r.rhs_power))
                stack.extend(r.subreports)
    elapsed = time.perf_counter() - start
    checked = sum(v[0] + v[1] for v in tally.values())
    required = {
        "discrete_meyer", "brunn", "affine_image", "translation", "discrete_lw", "unconditional_meyer",
        "unconditional_dilate", "sumset", "preimages", "reverse_meyer", "reverse_meyer_unimodular", "slicing",
        "reverse_lw", "toolbox", "minkowski_lower", "minkowski_upper", "malikiosis", "van_der_corput",
        "blichfeldt", "minima_duality_1", "volume_product", "mahler_basis_1",
    }
    exercised = {cid for cid, (h, f, _) in tally.items() if h + f > 0}
    missing = sorted(required - exercised)
    ok = not failures and not missing
    criterion(6, ok, f"{len(bodies)} bodies, {checked} exact comparisons over {len(exercised)} check kinds, "
                     f"failures={len(failures)}, unexercised={missing}, {elapsed:.0f}s")
    assert not failures, failures[:5]
    assert not missing


# -- 7 -----------------------------------------------------------------------


def test_criterion_7_conjecture_probes(criterion):
    n, h = 3, 10**4
    ratio = translation_ratio(fm.double_pyramid(h, n), (Fraction(1, 2), Fraction(1, 2), 0))
    rel = abs(ratio / 2 ** (n - 2) - 1)
    wills = wills_probe(count=100, seed=SEED)
    wills_ok = len(wills) == 100 and all(r.holds for r in wills)
    ok = rel <= Fraction(2, 100) and wills_ok
    criterion(7, ok, f"#(K_h+t)/#(K_h) = {float(ratio):.5f} vs 2^(n-2)=2, rel err {float(rel):.2e} (tol 2e-2); "
                     f"Wills planar bound holds on {sum(r.holds for r in wills)}/100 polygons")
    assert ok


# -- 8 -----------------------------------------------------------------------


def test_criterion_8_slicing_scan(criterion):
    rep = slicing_ratio_scan(Lattice.standard(2), [5])
    gauss = sum(1 for x, y in itertools.product(range(-5, 6), repeat=2) if x * x + y * y <= 25)
    z2_ok = rep.witnesses["rows"][0]["count"] == gauss == 81
    D4 = Lattice.from_columns(d4_basis())
    radii = [1, 2, 3, 4, 5, 6]
    first = slicing_ratio_scan(D4, radii).to_json()
    second = slicing_ratio_scan(D4, radii).to_json()
    d4_ok = first == second and '"verdict":"inapplicable"' in first
    ok = z2_ok and d4_ok
    criterion(8, ok, f"#(5B_2) = {rep.witnesses['rows'][0]['count']} vs Gauss-circle oracle {gauss}; "
                     f"D4 scan r<=6 deterministic={first == second}")
    assert ok


# -- 9 -----------------------------------------------------------------------


def test_criterion_9_determinism(criterion, tmp_path):
    runs = [
        ["sweep", "discrete_meyer", "--family", "random_sym", "--n", "3", "--seed", "11", "--budget", "24"],
        ["sweep", "reverse_meyer", "--family", "random_sym", "--n", "2", "--seed", "5", "--budget", "16"],
        ["sweep", "translation", "--family", "K_h", "--n", "3", "--h-range", "1..12"],
    ]
    identical = []
    for i, argv in enumerate(runs):
        outputs = []
        for jobs in (1, 8, 1):
            path = tmp_path / f"run{i}_{jobs}_{len(outputs)}.jsonl"
            code = cli.run(argv + ["--jobs", str(jobs), "--out", str(path)])
            outputs.append((code, path.read_bytes()))
        identical.append(len(set(outputs)) == 1 and outputs[0][0] == 0)
    ok = all(identical)
    criterion(9, ok, f"JSON-lines byte-identical across --jobs 1, 8 and a re-run for {sum(identical)}/{len(runs)} sweeps")
    assert ok
