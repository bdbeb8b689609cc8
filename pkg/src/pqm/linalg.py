"""Small linear algebra kernels over three fields.

* rationals: matrices are tuples of row tuples of ``Fraction``; elimination is exact.
* complex: numpy arrays; rank decisions use singular values against a tolerance.
* GF(2): vectors are int bitmasks; elimination is XOR on packed words.

Vectors passed around as "columns" are plain sequences (rational), 1-d arrays
(complex) or ints (GF(2)).
"""

from __future__ import annotations

import os
from fractions import Fraction
from numbers import Integral, Rational
from typing import Sequence

import numpy as np

DEFAULT_TOL = 1e-9


def tolerance() -> float:
    """Comparison tolerance for complex arithmetic; ``PQM_TOL`` overrides it."""
    raw = os.environ.get("PQM_TOL")
    return float(raw) if raw else DEFAULT_TOL


def is_exact_scalar(x) -> bool:
    return isinstance(x, Rational) and not isinstance(x, bool)


def is_exact_matrix(m) -> bool:
    if isinstance(m, np.ndarray):
        return m.dtype == object and all(is_exact_scalar(x) for x in m.flat)
    try:
        return all(is_exact_scalar(x) for row in m for x in row)
    except TypeError:
        return False


# ---- rationals --------------------------------------------------------------

QMatrix = tuple  # tuple[tuple[Fraction, ...], ...]


def qmat(rows) -> QMatrix:
    return tuple(tuple(Fraction(x) for x in row) for row in rows)


def q_identity(n: int) -> QMatrix:
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def q_transpose(a: QMatrix) -> QMatrix:
    return tuple(zip(*a)) if a else ()


def q_mul(a: QMatrix, b: QMatrix) -> QMatrix:
    bt = q_transpose(b)
    return tuple(tuple(sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt) for row in a)


def q_matvec(a: QMatrix, v: Sequence) -> tuple:
    return tuple(sum((x * y for x, y in zip(row, v)), Fraction(0)) for row in a)


def q_sub(a: QMatrix, b: QMatrix) -> QMatrix:
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def q_add(a: QMatrix, b: QMatrix) -> QMatrix:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def q_scale(c, a: QMatrix) -> QMatrix:
    c = Fraction(c)
    return tuple(tuple(c * x for x in row) for row in a)


def q_from_columns(cols: Sequence[Sequence], n: int) -> QMatrix:
    return tuple(tuple(Fraction(c[i]) for c in cols) for i in range(n))


def q_rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    m = [[Fraction(x) for x in row] for row in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def q_rank(rows: Sequence[Sequence]) -> int:
    return len(q_rref(rows)[1])


def q_nullspace(a: Sequence[Sequence], ncols: int | None = None) -> list[tuple[Fraction, ...]]:
    """Basis of {x : a x = 0}, one vector per free column."""
    ncols = len(a[0]) if a else (ncols or 0)
    rref, pivots = q_rref(a)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, pc in zip(rref, pivots):
            x[pc] = -row[f]
        basis.append(tuple(x))
    return basis


def q_inverse(a: QMatrix) -> QMatrix:
    n = len(a)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    rref, pivots = q_rref(aug)
    if pivots[:n] != list(range(n)) or len(rref) < n:
        raise ZeroDivisionError("matrix is singular")
    return tuple(tuple(row[n:]) for row in rref[:n])


def q_is_zero(a: QMatrix) -> bool:
    return all(x == 0 for row in a for x in row)


# ---- complex ----------------------------------------------------------------


def as_complex(m) -> np.ndarray:
    if isinstance(m, np.ndarray) and m.dtype != object:
        return m.astype(complex)
    return np.array([[complex(x) for x in row] for row in m], dtype=complex)


def c_orth(a: np.ndarray, tol: float | None = None) -> np.ndarray:
    """Orthonormal basis for the column space of ``a`` (n x r)."""
    tol = tolerance() if tol is None else tol
    a = np.asarray(a, dtype=complex)
    if a.size == 0:
        return np.zeros((a.shape[0], 0), dtype=complex)
    u, s, _ = np.linalg.svd(a, full_matrices=False)
    rank = int(np.sum(s > tol * max(1.0, s[0])))
    return u[:, :rank]


def c_nullspace(a: np.ndarray, tol: float | None = None) -> np.ndarray:
    """Orthonormal basis (as columns) for the kernel of ``a``."""
    tol = tolerance() if tol is None else tol
    a = np.asarray(a, dtype=complex)
    ncols = a.shape[1]
    if a.shape[0] == 0:
        return np.eye(ncols, dtype=complex)
    _, s, vh = np.linalg.svd(a, full_matrices=True)
    scale = max(1.0, s[0]) if s.size else 1.0
    rank = int(np.sum(s > tol * scale))
    return vh[rank:].conj().T


def c_is_close(a, b, tol: float | None = None) -> bool:
    tol = tolerance() if tol is None else tol
    return bool(np.max(np.abs(np.asarray(a) - np.asarray(b)), initial=0.0) <= tol)


# ---- GF(2) ------------------------------------------------------------------


def gf2_rref(rows: Sequence[int]) -> tuple[list[int], list[int]]:
    """Row-reduce bitmask rows; pivot of a row is its lowest set bit."""
    work = [r for r in rows if r]
    out: list[int] = []
    pivots: list[int] = []
    while work:
        row = work.pop()
        for r, p in zip(out, pivots):
            if (row >> p) & 1:
                row ^= r
        if not row:
            continue
        p = (row & -row).bit_length() - 1
        out = [r ^ row if (r >> p) & 1 else r for r in out]
        out.append(row)
        pivots.append(p)
    order = sorted(range(len(out)), key=lambda i: pivots[i])
    return [out[i] for i in order], [pivots[i] for i in order]


def gf2_rank(rows: Sequence[int]) -> int:
    return len(gf2_rref(rows)[0])


def gf2_in_span(v: int, rows: Sequence[int]) -> bool:
    rref, pivots = gf2_rref(rows)
    for r, p in zip(rref, pivots):
        if (v >> p) & 1:
            v ^= r
    return v == 0


def gf2_nullspace(columns: Sequence[int], nrows: int) -> list[int]:
    """Kernel of the matrix whose columns are the given n-bit masks.

    Returns vectors x (bitmasks over column indices) with XOR of the selected
    columns equal to zero.
    """
    m = len(columns)
    rows = []
    for i in range(nrows):
        r = 0
        for j, c in enumerate(columns):
            if (c >> i) & 1:
                r |= 1 << j
        rows.append(r)
    rref, pivots = gf2_rref(rows)
    free = [j for j in range(m) if j not in pivots]
    basis = []
    for f in free:
        x = 1 << f
        for r, p in zip(rref, pivots):
            if (r >> f) & 1:
                x |= 1 << p
        basis.append(x)
    return basis


def gf2_combine(columns: Sequence[int], coeffs: int) -> int:
    v = 0
    j = 0
    while coeffs:
        if coeffs & 1:
            v ^= columns[j]
        coeffs >>= 1
        j += 1
    return v


def gf2_span_elements(rows: Sequence[int]) -> list[int]:
    """All 2^k vectors in the span (brute force; use only for small k)."""
    basis, _ = gf2_rref(rows)
    return [gf2_combine(basis, c) for c in range(1 << len(basis))]


def gf2_matmul(a: Sequence[int], b: Sequence[int], n: int) -> list[int]:
    """Product of n x n matrices stored as column bitmasks: column j of AB is A(b_j)."""
    return [gf2_combine(a, col) for col in b]


def to_int_if_integral(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    if isinstance(x, Integral):
        return int(x)
    return x
