"""Exact rational linear algebra.

Vectors are tuples of :class:`fractions.Fraction` (or ``int``), matrices are
tuples of row tuples.  Where a matrix stands for a family of vectors (a
lattice basis, a spanning set) the *columns* are the vectors.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Optional, Sequence

Rational = Fraction
QVector = tuple  # tuple[Fraction | int, ...]
QMatrix = tuple  # tuple[QVector, ...], row major storage


class ExactError(ValueError):
    pass


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        raise ExactError(f"float {x!r} refused in exact context")
    return Fraction(x)


def vec(xs: Iterable) -> QVector:
    return tuple(as_fraction(x) for x in xs)


def mat(rows: Iterable[Iterable]) -> QMatrix:
    out = tuple(vec(r) for r in rows)
    if out and len({len(r) for r in out}) != 1:
        raise ExactError("ragged matrix")
    return out


def from_columns(cols: Sequence[Sequence]) -> QMatrix:
    cols = [vec(c) for c in cols]
    if not cols:
        raise ExactError("need at least one column")
    return tuple(tuple(c[i] for c in cols) for i in range(len(cols[0])))


def columns(M: QMatrix) -> list[QVector]:
    if not M:
        return []
    return [tuple(row[j] for row in M) for j in range(len(M[0]))]


def shape(M: QMatrix) -> tuple[int, int]:
    return len(M), (len(M[0]) if M else 0)


def transpose(M: QMatrix) -> QMatrix:
    return tuple(zip(*M)) if M else ()


def identity(n: int) -> QMatrix:
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def dot(u: Sequence, v: Sequence):
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def matvec(M: QMatrix, x: Sequence) -> QVector:
    return tuple(dot(row, x) for row in M)


def matmul(A: QMatrix, B: QMatrix) -> QMatrix:
    Bt = transpose(B)
    return tuple(tuple(dot(row, col) for col in Bt) for row in A)


def scale(c, v: Sequence) -> QVector:
    return tuple(c * x for x in v)


def add(u: Sequence, v: Sequence) -> QVector:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Sequence, v: Sequence) -> QVector:
    return tuple(a - b for a, b in zip(u, v))


def norm_sq(v: Sequence):
    return dot(v, v)


def is_integral(v: Iterable) -> bool:
    return all(Fraction(x).denominator == 1 for x in v)


def common_denominator(xs: Iterable) -> int:
    return reduce(lcm, (Fraction(x).denominator for x in xs), 1)


def to_int_vector(v: Sequence) -> tuple[int, ...]:
    if not is_integral(v):
        raise ExactError(f"non-integral vector {v}")
    return tuple(int(x) for x in v)


def primitive(v: Sequence) -> tuple[int, ...]:
    """Scale a nonzero rational vector to the primitive integer vector on its ray."""
    d = common_denominator(v)
    ints = [int(Fraction(x) * d) for x in v]
    g = reduce(gcd, ints, 0)
    if g == 0:
        raise ExactError("zero vector has no primitive direction")
    return tuple(x // g for x in ints)


def canonical_sign(v: Sequence) -> tuple:
    """Flip ``v`` so that its first nonzero entry is positive."""
    for x in v:
        if x != 0:
            return tuple(v) if x > 0 else tuple(-y for y in v)
    return tuple(v)


def _clear_rows(M: QMatrix) -> tuple[list[list[int]], list[int]]:
    rows, scales = [], []
    for row in M:
        d = common_denominator(row)
        rows.append([int(Fraction(x) * d) for x in row])
        scales.append(d)
    return rows, scales


def determinant(M: QMatrix) -> Fraction:
    """Exact determinant via fraction-free Bareiss elimination."""
    n, m = shape(M)
    if n != m:
        raise ExactError(f"determinant of non-square {n}x{m} matrix")
    if n == 0:
        return Fraction(1)
    a, scales = _clear_rows(M)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return Fraction(0)
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return Fraction(sign * a[n - 1][n - 1], reduce(lambda x, y: x * y, scales, 1))


def rref(M: QMatrix) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot columns."""
    a = [[Fraction(x) for x in row] for row in M]
    n_rows, n_cols = shape(M)
    pivots = []
    r = 0
    for c in range(n_cols):
        p = next((i for i in range(r, n_rows) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(n_rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == n_rows:
            break
    return a, pivots


def rank(M: QMatrix) -> int:
    if not M:
        return 0
    return len(rref(M)[1])


def rank_of_vectors(vectors: Sequence[Sequence]) -> int:
    vectors = list(vectors)
    if not vectors:
        return 0
    return rank(mat(vectors))


def rref_solve(M: QMatrix, y: Sequence) -> Optional[QVector]:
    """Some exact solution ``x`` of ``M x = y``, or ``None`` if inconsistent."""
    n_rows, n_cols = shape(M)
    if len(y) != n_rows:
        raise ExactError("right-hand side length mismatch")
    aug = tuple(tuple(row) + (as_fraction(yi),) for row, yi in zip(M, y))
    a, pivots = rref(aug)
    if n_cols in pivots:
        return None
    x = [Fraction(0)] * n_cols
    for i, c in enumerate(pivots):
        x[c] = a[i][n_cols]
    return tuple(x)


def inverse(M: QMatrix) -> QMatrix:
    n, m = shape(M)
    if n != m:
        raise ExactError("inverse of non-square matrix")
    aug = tuple(tuple(row) + identity(n)[i] for i, row in enumerate(M))
    a, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ExactError("singular matrix")
    return tuple(tuple(row[n:]) for row in a)


def nullspace(M: QMatrix) -> list[QVector]:
    """Rational basis of ``{x : M x = 0}``."""
    n_cols = shape(M)[1]
    a, pivots = rref(M)
    free = [c for c in range(n_cols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * n_cols
        x[f] = Fraction(1)
        for i, c in enumerate(pivots):
            x[c] = -a[i][f]
        basis.append(tuple(x))
    return basis


# --------------------------------------------------------------------------
# Integer matrices: Hermite normal form, kernels, diophantine systems


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def _int_matrix(M: QMatrix) -> list[list[int]]:
    out = []
    for row in M:
        if not is_integral(row):
            raise ExactError("HNF requires integer entries")
        out.append([int(x) for x in row])
    return out


def _hnf_int(A: list[list[int]], n_cols: int) -> tuple[list[list[int]], list[list[int]], list[tuple[int, int]]]:
    H = [row[:] for row in A]
    U = [[int(i == j) for j in range(n_cols)] for i in range(n_cols)]

    def colop(j, k, a, b, c, d):
        # (col_j, col_k) <- (a col_j + b col_k, c col_j + d col_k)
        for R in (H, U):
            for row in R:
                x, y = row[j], row[k]
                row[j], row[k] = a * x + b * y, c * x + d * y

    pivots = []
    p = 0
    for i in range(len(H)):
        if p == n_cols:
            break
        for j in range(p + 1, n_cols):
            if H[i][j] == 0:
                continue
            a, b = H[i][p], H[i][j]
            g, x, y = _egcd(a, b)
            colop(p, j, x, y, -b // g, a // g)
        if H[i][p] == 0:
            continue
        if H[i][p] < 0:
            for R in (H, U):
                for row in R:
                    row[p] = -row[p]
        piv = H[i][p]
        for j in range(p):
            q = H[i][j] // piv
            if q:
                for R in (H, U):
                    for row in R:
                        row[j] -= q * row[p]
        pivots.append((i, p))
        p += 1
    return H, U, pivots


def hnf(M: QMatrix) -> tuple[QMatrix, QMatrix]:
    """Column Hermite normal form: returns ``(H, U)`` with ``M U = H``.

    ``U`` is unimodular and ``H`` is lower echelon with positive pivots;
    entries to the left of a pivot are reduced into ``[0, pivot)``.  Zero
    columns of ``H`` come last.
    """
    A = _int_matrix(M)
    n_cols = shape(M)[1]
    H, U, _ = _hnf_int(A, n_cols)
    return mat(H), mat(U)


def hnf_pivots(M: QMatrix) -> list[tuple[int, int]]:
    A = _int_matrix(M)
    return _hnf_int(A, shape(M)[1])[2]


def integer_kernel(M: QMatrix) -> list[tuple[int, ...]]:
    """Basis of the lattice ``{x in Z^n : M x = 0}`` (``M`` rational)."""
    rows = []
    for row in M:
        d = common_denominator(row)
        rows.append([int(Fraction(x) * d) for x in row])
    n_cols = shape(M)[1]
    H, U, pivots = _hnf_int(rows, n_cols)
    r = len(pivots)
    return [tuple(U[i][j] for i in range(n_cols)) for j in range(r, n_cols)]


def canonical_basis(vectors: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Canonical basis (column HNF) of the integer lattice spanned by ``vectors``."""
    vectors = [tuple(int(x) for x in v) for v in vectors]
    if not vectors:
        return []
    n = len(vectors[0])
    M = [[v[i] for v in vectors] for i in range(n)]
    H, _, pivots = _hnf_int(M, len(vectors))
    return [tuple(H[i][j] for i in range(n)) for j in range(len(pivots))]


def solve_integer(M: QMatrix, r: Sequence) -> Optional[tuple[tuple[int, ...], list[tuple[int, ...]]]]:
    """Integer solutions of ``M x = r`` with ``M`` integral.

    Returns ``(x0, kernel)`` so that the solution set is ``x0 + Z kernel``, or
    ``None`` when no integer solution exists.
    """
    A = _int_matrix(M)
    n_cols = shape(M)[1]
    H, U, pivots = _hnf_int(A, n_cols)
    r = [as_fraction(x) for x in r]
    y = [Fraction(0)] * n_cols
    pivot_of_row = dict(pivots)
    for i, row in enumerate(H):
        acc = sum((row[j] * y[j] for j in range(n_cols) if row[j]), Fraction(0))
        if i in pivot_of_row:
            c = pivot_of_row[i]
            val = (r[i] - (acc - row[c] * y[c])) / row[c]
            if val.denominator != 1:
                return None
            y[c] = val
        elif acc != r[i]:
            return None
    x0 = tuple(int(sum(U[i][j] * y[j] for j in range(n_cols))) for i in range(n_cols))
    k = len(pivots)
    kernel = [tuple(U[i][j] for i in range(n_cols)) for j in range(k, n_cols)]
    return x0, kernel


def complete_to_unimodular(cols: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Extend a basis of a primitive sublattice of ``Z^n`` to a basis of ``Z^n``.

    Returns the extra columns; raises if the given columns do not span a
    primitive sublattice.
    """
    cols = [tuple(int(x) for x in c) for c in cols]
    n = len(cols[0])
    k = len(cols)
    # rows of C^T: solve C^T U = [D | 0]; primitive iff D unimodular
    Ct = [list(c) for c in cols]
    H, U, pivots = _hnf_int(Ct, n)
    if len(pivots) != k or any(H[i][p] != 1 for i, p in pivots):
        raise ExactError("columns do not span a primitive sublattice")
    # U^{-1} has the property C^T = H U^{-1}; its last rows complement C.
    Uinv = inverse(mat(U))
    # columns of (U^{-1})^T beyond k form the complement: C^T V = 0 part
    extra = [to_int_vector(tuple(Uinv[j][i] for i in range(n))) for j in range(k, n)]
    basis = cols + extra
    if abs(determinant(from_columns(basis))) != 1:
        raise ExactError("failed to complete basis")
    return extra


# --------------------------------------------------------------------------
# Exact linear programming (dense two-phase simplex with Bland's rule)


class LPStatus:
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


def _pivot(T: list[list[Fraction]], r: int, c: int) -> None:
    inv = 1 / T[r][c]
    T[r] = [x * inv for x in T[r]]
    pr = T[r]
    for i, row in enumerate(T):
        if i != r and row[c] != 0:
            f = row[c]
            T[i] = [x - f * y for x, y in zip(row, pr)]


def _run_simplex(T: list[list[Fraction]], basis: list[int], allowed: int) -> bool:
    """Optimise the tableau in place; objective is the last row.  False if unbounded."""
    m = len(T) - 1
    while True:
        obj = T[m]
        enter = next((j for j in range(allowed) if obj[j] < 0), None)
        if enter is None:
            return True
        best = None
        for i in range(m):
            a = T[i][enter]
            if a > 0:
                ratio = T[i][-1] / a
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            return False
        _pivot(T, best[1], enter)
        basis[best[1]] = enter


def lp_maximize(A: Sequence[Sequence], b: Sequence, c: Sequence) -> tuple[str, Optional[Fraction], Optional[QVector]]:
    """Maximise ``c.x`` subject to ``A x <= b`` with ``x`` free, exactly.

    Returns ``(status, value, argmax)``.
    """
    m = len(A)
    n = len(c)
    c = [as_fraction(x) for x in c]
    if m == 0:
        if any(c):
            return LPStatus.UNBOUNDED, None, None
        return LPStatus.OPTIMAL, Fraction(0), tuple(Fraction(0) for _ in range(n))
    # variables: x+ (n), x- (n), slack (m), artificial (m)
    n_struct = 2 * n + m
    rows = []
    for i in range(m):
        a = [as_fraction(x) for x in A[i]]
        bi = as_fraction(b[i])
        row = a + [-x for x in a] + [Fraction(int(j == i)) for j in range(m)]
        if bi < 0:
            row = [-x for x in row]
            bi = -bi
        rows.append(row + [Fraction(int(j == i)) for j in range(m)] + [bi])
    width = n_struct + m
    # phase 1: minimise the sum of artificials == maximise -sum
    obj = [Fraction(0)] * (width + 1)
    for row in rows:
        for j in range(n_struct):
            obj[j] -= row[j]
        obj[-1] -= row[-1]
    T = rows + [obj]
    basis = [n_struct + i for i in range(m)]
    _run_simplex(T, basis, width)
    if T[m][-1] != 0:
        return LPStatus.INFEASIBLE, None, None
    # drive artificials out of the basis
    for i in range(m):
        if basis[i] >= n_struct:
            j = next((j for j in range(n_struct) if T[i][j] != 0), None)
            if j is not None:
                _pivot(T, i, j)
                basis[i] = j
    # phase 2
    obj = [Fraction(0)] * (width + 1)
    for j in range(n):
        obj[j] = -c[j]
        obj[n + j] = c[j]
    T[m] = obj
    for i in range(m):
        bj = basis[i]
        if T[m][bj] != 0:
            f = T[m][bj]
            T[m] = [x - f * y for x, y in zip(T[m], T[i])]
    # artificial columns are frozen by restricting entering columns
    if not _run_simplex(T, basis, n_struct):
        return LPStatus.UNBOUNDED, None, None
    z = [Fraction(0)] * width
    for i in range(m):
        z[basis[i]] = T[i][-1]
    x = tuple(z[j] - z[n + j] for j in range(n))
    return LPStatus.OPTIMAL, T[m][-1], x
