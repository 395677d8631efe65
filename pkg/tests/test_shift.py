from fractions import Fraction

import numpy as np
import pytest
import sympy

from gjs_cup.shift import (
    ChebyshevFamily,
    ShiftTruncation,
    chebyshev,
    check_psi_intertwining,
    inner_nu,
    inner_nu_quadrature,
    lemma_ri_scan,
    moment_crosscheck,
    r_function,
    r_function_min,
    semicircle_moment,
    telescoping_check,
    vi_identity_check,
)
from gjs_cup.scalar import DELTA, ZERO

th = sympy.Symbol("th")


def sympy_moment(k):
    # exact integral of t^k against the semicircle density, with t = 2 sin(th)
    density = 2 * sympy.cos(th) ** 2 / sympy.pi
    return sympy.integrate((2 * sympy.sin(th)) ** k * density, (th, -sympy.pi / 2, sympy.pi / 2))


def test_chebyshev_examples():
    assert chebyshev(2) == (-1, 0, 1)
    assert chebyshev(3) == (0, -2, 0, 1)
    assert chebyshev(4) == (1, 0, -3, 0, 1)
    fam = ChebyshevFamily(8)
    for i, p in enumerate(fam.polys):
        assert len(p) == i + 1 and p[-1] == 1


def test_chebyshev_matches_sympy():
    x = sympy.Symbol("x")
    for i in range(10):
        # P_i(2 cos th) = sin((i+1) th) / sin(th): Chebyshev of the second kind at x/2
        ref = sympy.Poly(sympy.chebyshevu(i, x / 2), x).all_coeffs()[::-1]
        assert list(chebyshev(i)) == [int(c) for c in ref]


@pytest.mark.parametrize("k", range(0, 13))
def test_moments_match_exact_integration(k):
    assert semicircle_moment(k) == sympy_moment(k)


def test_moment_examples():
    assert semicircle_moment(2) == 1 and semicircle_moment(4) == 2 and semicircle_moment(7) == 0


def test_orthonormal():
    assert inner_nu(chebyshev(2), chebyshev(3)) == 0
    for i in range(13):
        for j in range(13):
            assert inner_nu(chebyshev(i), chebyshev(j)) == (1 if i == j else 0)
            assert abs(inner_nu_quadrature(chebyshev(i), chebyshev(j)) - (i == j)) < 1e-9


def test_psi_intertwining():
    assert check_psi_intertwining(8).passed
    assert check_psi_intertwining(14).passed
    with pytest.raises(ValueError):
        check_psi_intertwining(1)


def test_shift_truncation():
    sh = ShiftTruncation(6)
    assert np.array_equal(sh.T, sh.T.T)
    assert all(sh.T[i, i] == 0 for i in range(6))
    for i in range(6):
        v = sh.v(i)
        assert np.array_equal(v.T.dot(v), sh.q_e(i))
        assert np.array_equal(v.dot(v.T), sh.q_e(0))


def _grid_min_bruteforce(I, G):
    pts = [Fraction(4 * k - 2 * (G - 1), G - 1) for k in range(G)]
    vals = [(sum(sum(c * x**e for e, c in enumerate(chebyshev(i))) ** 2 for i in range(I + 1)), x)
            for x in pts]
    return min(vals)


def test_r_function_min_examples():
    assert r_function_min(0, 5)[0] == 1
    assert r_function_min(1, 10_001) == (1, 0)
    val, arg = r_function_min(2, 10_000)
    assert val >= Fraction(7, 4) and float(val) - 1.75 < 1e-6
    assert val == 1 + arg**2 + (arg**2 - 1) ** 2
    assert r_function(2, arg) == val


@pytest.mark.parametrize("I", [0, 1, 2, 3, 5, 8, 13])
def test_r_function_min_matches_bruteforce(I):
    assert r_function_min(I, 201) == _grid_min_bruteforce(I, 201)


def test_lemma_scan():
    rep = lemma_ri_scan()
    assert rep.passed
    mins = rep.data["grid_min"]
    assert all(a <= b for a, b in zip(mins, mins[1:]))
    stars = rep.data["I_star"]
    for B, I in stars.items():
        assert I <= 500
        assert rep.data["grid_min_exact_at_I_star"][B] >= int(B)
        assert r_function_min(I - 1, 10_000)[0] < int(B)


def test_vi_identity():
    rep = vi_identity_check(1, 8)
    assert rep.data["row0"][:3] == [0, 1, 0]
    rep = vi_identity_check(2, 8)
    assert rep.data["row0"] == [0, 0, 1, 0, 0, 0]
    assert vi_identity_check(3, 12).passed
    for i in range(6):
        assert vi_identity_check(i, 16).passed
    with pytest.raises(ValueError):
        vi_identity_check(5, 8)


@pytest.mark.parametrize("k,N", [(2, 6), (3, 8), (4, 10)])
def test_telescoping(k, N):
    assert telescoping_check(k, N).passed


def test_moment_crosscheck():
    assert moment_crosscheck(1, 3).data["lhs"] == ZERO
    assert moment_crosscheck(2, 3).data["rhs"] == DELTA
    assert moment_crosscheck(3, 4).data["rhs"] == DELTA
    with pytest.raises(ValueError):
        moment_crosscheck(3, 3)
