"""The unilateral shift on l^2(N), truncated, and the polynomials orthogonal for
the semicircle law.

``P_0 = 1``, ``P_1 = X``, ``P_i = X P_{i-1} - P_{i-2}``.  The semicircle measure
has moments ``m_k = Catalan(k/2)`` for even ``k`` and 0 otherwise, so inner
products of polynomials are exact rationals.  Matrix identities are exact over
the integers and each carries the index bound below which truncation cannot
interfere.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .diagrams import catalan
from .reports import Report

__all__ = [
    "ShiftTruncation",
    "ChebyshevFamily",
    "chebyshev",
    "semicircle_moment",
    "inner_nu",
    "inner_nu_quadrature",
    "check_psi_intertwining",
    "r_function",
    "r_function_min",
    "lemma_ri_scan",
    "vi_identity_check",
    "telescoping_check",
    "moment_crosscheck",
    "poly_mul",
    "poly_add",
    "poly_of_matrix",
]


# -- polynomials (ascending integer coefficient tuples) -------------------------


def _trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def poly_add(p, q, scale=1):
    n = max(len(p), len(q))
    return _trim(
        (p[i] if i < len(p) else 0) + scale * (q[i] if i < len(q) else 0) for i in range(n)
    )


def poly_mul(p, q):
    if not p or not q:
        return ()
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return _trim(out)


@lru_cache(maxsize=None)
def chebyshev(i: int) -> tuple:
    """Coefficients (constant term first) of ``P_i``."""
    if i < 0:
        raise ValueError("index must be non-negative")
    if i == 0:
        return (1,)
    if i == 1:
        return (0, 1)
    return poly_add((0,) + chebyshev(i - 1), chebyshev(i - 2), -1)


@dataclass
class ChebyshevFamily:
    I: int
    polys: list = field(init=False)

    def __post_init__(self):
        self.polys = [chebyshev(i) for i in range(self.I + 1)]

    def __getitem__(self, i):
        return self.polys[i]


def semicircle_moment(k: int) -> int:
    """``int t^k dnu(t)``: ``Catalan(k/2)`` for even ``k``, else 0."""
    if k < 0:
        raise ValueError("moment order must be non-negative")
    return 0 if k % 2 else catalan(k // 2)


def inner_nu(p, q) -> Fraction:
    """Exact ``int p q dnu`` by expanding into moments."""
    return Fraction(sum(c * semicircle_moment(k) for k, c in enumerate(poly_mul(p, q))))


def inner_nu_quadrature(p, q, panels: int = 16, nodes: int = 12) -> float:
    """Composite Gauss-Legendre estimate of ``int p q dnu``.

    Substituting ``t = 2 sin(theta)`` turns the integrand into the smooth
    ``p q (2 sin theta) * 2 cos^2(theta) / pi`` on ``[-pi/2, pi/2]``.
    """
    x, w = np.polynomial.legendre.leggauss(nodes)
    edges = np.linspace(-np.pi / 2, np.pi / 2, panels + 1)
    pq = np.array(poly_mul(p, q) or (0,), dtype=float)
    total = 0.0
    for a, b in zip(edges[:-1], edges[1:]):
        theta = 0.5 * (b - a) * x + 0.5 * (a + b)
        t = 2 * np.sin(theta)
        f = np.polynomial.polynomial.polyval(t, pq) * 2 * np.cos(theta) ** 2 / np.pi
        total += 0.5 * (b - a) * float(np.dot(w, f))
    return total


def check_psi_intertwining(N: int) -> Report:
    """Multiplication by ``t`` in the basis ``P_0..P_{N-1}`` is the truncated
    ``S + S*``: ``X P_i = P_{i+1} + P_{i-1}`` for ``i <= N-2``."""
    if N < 2:
        raise ValueError("N must be >= 2")
    failures = []
    for i in range(N - 1):
        lhs = (0,) + chebyshev(i)
        rhs = poly_add(chebyshev(i + 1), chebyshev(i - 1) if i else ())
        if lhs != rhs:
            failures.append(i)
    # coordinates of X P_i in the P basis, solved top-down (P_j is monic of degree j)
    M = np.zeros((N, N), dtype=object)
    for i in range(N - 1):
        rem = list((0,) + chebyshev(i))
        for j in range(len(rem) - 1, -1, -1):
            c = rem[j]
            if c:
                M[j, i] = c
                rem = list(poly_add(rem, chebyshev(j), -c)) + [0] * len(rem)
            rem = rem[: j]
    T = ShiftTruncation(N).T
    interior = N - 1
    same = bool(np.array_equal(M[:, :interior], T[:, :interior]))
    return Report(
        "psi-intertwining",
        {"N": N},
        not failures and same,
        {"failures": failures, "matrix_matches_shift": same, "interior_bound": interior},
    )


# -- truncated shift -----------------------------------------------------------


class ShiftTruncation:
    """``S e_i = e_{i+1}`` on ``span(e_0..e_{N-1})`` (``S e_{N-1} = 0``)."""

    def __init__(self, N: int):
        if N < 1:
            raise ValueError("N must be >= 1")
        self.N = N
        S = np.zeros((N, N), dtype=object)
        S[...] = 0
        for i in range(N - 1):
            S[i + 1, i] = 1
        self.S = S
        self.T = S + S.T

    def identity(self):
        I = np.zeros((self.N, self.N), dtype=object)
        I[...] = 0
        for i in range(self.N):
            I[i, i] = 1
        return I

    def q_e(self, j: int):
        """Rank-one projection onto ``e_j``."""
        P = np.zeros((self.N, self.N), dtype=object)
        P[...] = 0
        P[j, j] = 1
        return P

    def v(self, i: int):
        """Partial isometry ``e_i -> e_0``: ``v* v = q_{e_i}``, ``v v* = q_{e_0}``."""
        V = np.zeros((self.N, self.N), dtype=object)
        V[...] = 0
        V[0, i] = 1
        return V

    def poly(self, p):
        return poly_of_matrix(p, self.T)


def poly_of_matrix(p, A):
    """Horner evaluation of the integer polynomial ``p`` at the square matrix ``A``."""
    n = A.shape[0]
    out = np.zeros((n, n), dtype=object)
    out[...] = 0
    I = np.zeros((n, n), dtype=object)
    I[...] = 0
    for i in range(n):
        I[i, i] = 1
    for c in reversed(p):
        out = out.dot(A) + c * I
    return out


def vi_identity_check(i: int, N: int) -> Report:
    """``q_{e_0} P_i(T) = v_i`` on columns ``l`` with ``l + i < N`` and
    ``P_i(T) e_0 = e_i``.  Requires ``2 i <= N - 1``."""
    if i < 0 or 2 * i > N - 1:
        raise ValueError(f"index {i} violates the exactness boundary for N = {N}")
    sh = ShiftTruncation(N)
    Pi = sh.poly(chebyshev(i))
    bound = N - i
    row = sh.q_e(0).dot(Pi)[:, :bound]
    vi = sh.v(i)[:, :bound]
    e_i = np.zeros(N, dtype=object)
    e_i[...] = 0
    e_i[i] = 1
    col = Pi[:, 0]
    ok_row = bool(np.array_equal(row, vi))
    ok_col = bool(np.array_equal(col, e_i))
    return Report(
        "vi-identity",
        {"i": i, "N": N},
        ok_row and ok_col,
        {
            "row0": [int(x) for x in Pi[0, :bound]],
            "column0": [int(x) for x in col],
            "row_matches_vi": ok_row,
            "column_is_ei": ok_col,
            "interior_bound": bound,
        },
    )


def _kron(A, B):
    return np.kron(A, B)


def telescoping_check(k: int, N: int) -> Report:
    """``T^k (x) 1 - 1 (x) T^k = (T (x) 1 - 1 (x) T) sum_j T^j (x) T^(k-1-j)``.

    Both sides are computed on the ``N``-truncation and compared exactly on the
    whole space; the interior block (indices ``< N - k`` in both factors) is
    also compared against a larger truncation, where it must coincide with the
    untruncated operator.
    """
    if k < 2:
        raise ValueError("k must be >= 2")

    def sides(n):
        sh = ShiftTruncation(n)
        T, I = sh.T, sh.identity()
        powers = [I]
        for _ in range(k):
            powers.append(powers[-1].dot(T))
        lhs = _kron(powers[k], I) - _kron(I, powers[k])
        total = sum(_kron(powers[j], powers[k - 1 - j]) for j in range(k))
        rhs = (_kron(T, I) - _kron(I, T)).dot(total)
        return lhs, rhs

    lhs, rhs = sides(N)
    big_lhs, big_rhs = sides(N + k)
    bound = N - k
    idx = [a * N + b for a in range(bound) for b in range(bound)]
    big_idx = [a * (N + k) + b for a in range(bound) for b in range(bound)]
    full = bool(np.array_equal(lhs, rhs))
    interior = bool(
        np.array_equal(lhs[np.ix_(idx, idx)], big_lhs[np.ix_(big_idx, big_idx)])
        and np.array_equal(rhs[np.ix_(idx, idx)], big_rhs[np.ix_(big_idx, big_idx)])
    )
    return Report(
        "telescoping",
        {"k": k, "N": N},
        full and interior,
        {"full_equality": full, "interior_matches_untruncated": interior,
         "interior_bound": bound},
    )


# -- Lemma shadow: R_I = sum_{i<=I} P_i^2 diverges uniformly ---------------------


def r_function(I: int, t) -> Fraction:
    """``R_I(t)`` exactly at a rational ``t``."""
    t = Fraction(t)
    a, D = t.numerator, t.denominator
    return _r_exact(I, a, D)


def _r_exact(I: int, a: int, D: int) -> Fraction:
    # P_i(a/D) = p_i / D^i with p_i = a p_{i-1} - D^2 p_{i-2}
    p_prev, p = 1, a
    num = 1  # running numerator of R over D^(2i)
    if I == 0:
        return Fraction(1)
    num = D * D + a * a
    for i in range(2, I + 1):
        p_prev, p = p, a * p - D * D * p_prev
        num = num * D * D + p * p
    return Fraction(num, D ** (2 * I))


def _grid(grid_size: int):
    if grid_size < 2:
        raise ValueError("grid_size must be >= 2")
    G = grid_size - 1
    # t_k = (4k - 2G) / G
    return G, np.array([(4 * k - 2 * G) / G for k in range(grid_size)])


_REL_MARGIN = 1e-8


def _exact_min(I, G, values, best):
    cand = np.nonzero(values <= best * (1 + _REL_MARGIN) + 1e-300)[0]
    exact = [(_r_exact(I, 4 * int(k) - 2 * G, G), int(k)) for k in cand]
    val, k = min(exact)
    return val, Fraction(4 * k - 2 * G, G)


def r_function_min(I: int, grid_size: int) -> tuple[Fraction, Fraction]:
    """Exact minimum of ``R_I`` over the uniform grid of ``grid_size`` rational
    points on ``[-2, 2]``, and the (leftmost) grid point attaining it.

    A float sweep selects the candidates within a relative ``1e-8`` of the float
    minimum (far above the float error of the recurrence for ``I <= 10^3``); the
    candidates are then compared exactly.
    """
    if I < 0:
        raise ValueError("I must be non-negative")
    G, t = _grid(grid_size)
    p_prev, p = np.ones_like(t), t.copy()
    R = np.ones_like(t)
    if I >= 1:
        R = R + p * p
    for _ in range(2, I + 1):
        p_prev, p = p, t * p - p_prev
        R = R + p * p
    return _exact_min(I, G, R, R.min())


def lemma_ri_scan(bounds=(4, 10, 100), grid_size: int = 10_000, I_max: int = 500) -> Report:
    """Grid minima of ``R_I`` for ``I = 0..`` until every bound is exceeded.

    Checks that the grid minimum never decreases and reports, for each bound
    ``B``, the first ``I`` with grid-min ``R_I >= B``.
    """
    G, t = _grid(grid_size)
    p_prev, p = None, None
    R = np.ones_like(t)
    mins, argmins = [], []
    targets = sorted(bounds)
    found: dict = {}
    for I in range(I_max + 1):
        if I == 1:
            p_prev, p = np.ones_like(t), t.copy()
            R = R + p * p
        elif I >= 2:
            p_prev, p = p, t * p - p_prev
            R = R + p * p
        val, arg = _exact_min(I, G, R, R.min())
        mins.append(val)
        argmins.append(arg)
        for B in targets:
            if B not in found and val >= B:
                found[B] = I
        if len(found) == len(targets):
            break
    monotone = all(a <= b for a, b in zip(mins, mins[1:]))
    return Report(
        "lemma-ri",
        {"bounds": list(bounds), "grid_size": grid_size, "I_max": I_max},
        monotone and len(found) == len(targets),
        {
            "I_star": {str(B): found.get(B) for B in targets},
            "monotone": monotone,
            "grid_min": [float(m) for m in mins],
            "grid_min_exact_at_I_star": {str(B): mins[found[B]] for B in found},
            "argmin_at_I_star": {str(B): argmins[found[B]] for B in found},
        },
    )


def moment_crosscheck(m: int, N: int) -> Report:
    """``tr(cup^m)`` computed diagrammatically against ``<T~^m e_0, e_0>`` where
    ``T~`` is the measured cup block of left multiplication by the cup."""
    from .algebra import GradedElement, trace
    from .cups import cup_block
    from .scalar import ONE, ZERO

    if N <= m:
        raise ValueError("need N > m")
    cup = GradedElement.cup()
    x = GradedElement.one()
    for _ in range(m):
        x = cup * x
    lhs = trace(x)
    T = cup_block(N, "left")
    vec = [ONE] + [ZERO] * N
    for _ in range(m):
        vec = [sum((T[i][j] * vec[j] for j in range(N + 1) if vec[j] and T[i][j]), ZERO)
               for i in range(N + 1)]
    rhs = vec[0]
    return Report("moment-crosscheck", {"m": m, "N": N}, lhs == rhs, {"lhs": lhs, "rhs": rhs})
