"""Small exact linear algebra over a field (``Fraction`` or ``Scalar`` entries).

Matrices are lists of rows.  Everything here is plain Gaussian elimination;
the matrices this package meets are at most a few hundred wide.
"""

from __future__ import annotations

from fractions import Fraction

__all__ = ["ldl", "row_echelon", "rank", "kernel", "matmul", "identity", "is_zero_matrix"]


def ldl(G, zero=Fraction(0), one=Fraction(1)):
    """Symmetric LDL^T factorization without pivoting.

    Returns ``(L, D)`` with ``L`` unit lower triangular and ``D`` the list of
    pivots.  Raises ``ZeroDivisionError`` if a zero pivot is met.
    """
    n = len(G)
    L = [[zero] * n for _ in range(n)]
    D = []
    for j in range(n):
        s = G[j][j]
        for k in range(j):
            if L[j][k]:
                s = s - L[j][k] * L[j][k] * D[k]
        if not s:
            raise ZeroDivisionError(f"zero pivot at {j}")
        D.append(s)
        L[j][j] = one
        for i in range(j + 1, n):
            t = G[i][j]
            for k in range(j):
                if L[i][k] and L[j][k]:
                    t = t - L[i][k] * L[j][k] * D[k]
            L[i][j] = t / s
    return L, D


def row_echelon(M):
    """Reduced row echelon form of a copy of ``M``; returns ``(R, pivot_columns)``."""
    R = [list(row) for row in M]
    if not R:
        return R, []
    rows, cols = len(R), len(R[0])
    pivots = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if R[i][c]), None)
        if p is None:
            continue
        R[r], R[p] = R[p], R[r]
        inv = R[r][c]
        R[r] = [x / inv if x else x for x in R[r]]
        for i in range(rows):
            if i != r and R[i][c]:
                f = R[i][c]
                R[i] = [a - f * b if b else a for a, b in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return R, pivots


def rank(M) -> int:
    return len(row_echelon(M)[1])


def kernel(M, zero, one):
    """Basis of the right kernel of ``M`` (one vector per free column)."""
    R, pivots = row_echelon(M)
    cols = len(M[0]) if M else 0
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [zero] * cols
        v[f] = one
        for r, p in enumerate(pivots):
            if R[r][f]:
                v[p] = -R[r][f]
        basis.append(v)
    return basis


def matmul(A, B, zero):
    n, m, p = len(A), len(B), len(B[0]) if B else 0
    out = [[zero] * p for _ in range(n)]
    for i in range(n):
        Ai = A[i]
        for k in range(m):
            a = Ai[k]
            if not a:
                continue
            Bk = B[k]
            row = out[i]
            for j in range(p):
                if Bk[j]:
                    row[j] = row[j] + a * Bk[j]
    return out


def identity(n, zero, one):
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def is_zero_matrix(M) -> bool:
    return all(not x for row in M for x in row)
