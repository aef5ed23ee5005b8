"""Exact linear algebra over any field whose elements support + - * / and bool.

Matrices are lists of rows.  Vectors are lists.  Used with ``Fraction`` and
:class:`~quandlekit.cyclotomic.CycloScalar` entries.
"""

from __future__ import annotations

from typing import Sequence


def identity(d: int, one, zero) -> list[list]:
    return [[one if i == j else zero for j in range(d)] for i in range(d)]


def mat_mul(A, B) -> list[list]:
    Bt = list(zip(*B))
    out = []
    for row in A:
        nz = [(k, a) for k, a in enumerate(row) if a]
        out.append([_dot(nz, col) for col in Bt])
    return out


def _dot(nz, col):
    it = iter(nz)
    try:
        k, a = next(it)
    except StopIteration:
        return col[0] * 0
    s = a * col[k]
    for k, a in it:
        b = col[k]
        if b:
            s = s + a * b
    return s


def mat_vec(A, v) -> list:
    return [_dot([(k, a) for k, a in enumerate(row) if a], v) for row in A]


def transpose(A) -> list[list]:
    return [list(r) for r in zip(*A)]


def mat_sub(A, B) -> list[list]:
    return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_add(A, B) -> list[list]:
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_scale(A, s) -> list[list]:
    return [[a * s for a in row] for row in A]


def rref(rows: Sequence[Sequence], ncols: int | None = None):
    """Reduced row echelon form; returns ``(nonzero rows, pivot columns)``."""
    M = [list(r) for r in rows]
    if not M:
        return [], []
    ncols = len(M[0]) if ncols is None else ncols
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(M)) if M[i][c]), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = 1 / M[r][c]
        M[r] = [v * inv for v in M[r]]
        pr = M[r]
        nzc = [j for j in range(c, len(pr)) if pr[j]]
        for i in range(len(M)):
            if i != r:
                f = M[i][c]
                if f:
                    row = M[i]
                    for j in nzc:
                        row[j] = row[j] - f * pr[j]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def rank(rows) -> int:
    return len(rref(rows)[1])


def nullspace(A, ncols: int | None = None, zero=None, one=None) -> list[list]:
    """Basis of ``{v : A v = 0}``; requires ``zero`` and ``one`` when A is empty."""
    if A:
        ncols = len(A[0]) if ncols is None else ncols
        zero = A[0][0] * 0 if zero is None else zero
        one = zero + 1 if one is None else one
    R, piv = rref(A, ncols)
    free = [c for c in range(ncols) if c not in set(piv)]
    basis = []
    for f in free:
        v = [zero] * ncols
        v[f] = one
        for row, p in zip(R, piv):
            v[p] = -row[f]
        basis.append(v)
    return basis


def det(A):
    M = [list(r) for r in A]
    n = len(M)
    d = M[0][0] * 0 + 1
    for c in range(n):
        p = next((i for i in range(c, n) if M[i][c]), None)
        if p is None:
            return M[0][0] * 0
        if p != c:
            M[c], M[p] = M[p], M[c]
            d = -d
        d = d * M[c][c]
        inv = 1 / M[c][c]
        for i in range(c + 1, n):
            f = M[i][c] * inv
            if f:
                M[i] = [a - f * b for a, b in zip(M[i], M[c])]
    return d


def inverse(A):
    """Inverse matrix, or ``None`` when singular."""
    n = len(A)
    zero = A[0][0] * 0
    one = zero + 1
    aug = [list(row) + [one if i == j else zero for j in range(n)] for i, row in enumerate(A)]
    R, piv = rref(aug, n)
    if piv != list(range(n)):
        return None
    return [row[n:] for row in R]


def column_basis(vectors: Sequence[Sequence]) -> list[list]:
    """Reduced echelon basis of the span of ``vectors``."""
    return rref(vectors)[0]


def coordinates(basis: Sequence[Sequence], v: Sequence):
    """Coefficients ``c`` with ``sum c_i basis[i] = v``; ``None`` if v is outside the span."""
    r = len(basis)
    n = len(v)
    rows = [[basis[i][j] for i in range(r)] + [v[j]] for j in range(n)]
    R, piv = rref(rows, r + 1)
    if r in piv:
        return None
    zero = v[0] * 0
    c = [zero] * r
    for row, p in zip(R, piv):
        c[p] = row[r]
    return c


def is_zero_matrix(A) -> bool:
    return not any(v for row in A for v in row)


def char_poly(A) -> list:
    """Coefficients of det(tI - A), lowest degree first (Faddeev-LeVerrier)."""
    n = len(A)
    zero = A[0][0] * 0
    one = zero + 1
    M = [[zero] * n for _ in range(n)]
    coeffs = [zero] * (n + 1)
    coeffs[n] = one
    I = identity(n, one, zero)
    for k in range(1, n + 1):
        M = mat_add(mat_mul(A, M), mat_scale(I, coeffs[n - k + 1]))
        AM = mat_mul(A, M)
        tr = zero
        for i in range(n):
            tr = tr + AM[i][i]
        coeffs[n - k] = tr * (-1) / k
    return coeffs


def poly_eval_matrix(coeffs, A):
    """``sum coeffs[i] A^i`` by Horner."""
    n = len(A)
    zero = A[0][0] * 0
    one = zero + 1
    I = identity(n, one, zero)
    out = [[zero] * n for _ in range(n)]
    for c in reversed(coeffs):
        out = mat_add(mat_mul(out, A), mat_scale(I, c))
    return out
