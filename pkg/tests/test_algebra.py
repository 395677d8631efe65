import random
from fractions import Fraction

import numpy as np

from gjs_cup import (
    DELTA,
    GradedElement,
    Q,
    adjoint,
    bullet,
    combine,
    enumerate_diagrams,
    inner,
    left_matrix,
    norm2,
    right_matrix,
    trace,
)
from gjs_cup.algebra import gram_at, gram_matrix
from gjs_cup.linalg import ldl
from oracles import element_at, inner_at, multiply_at, random_element

CUP = GradedElement.cup()
ONE_EL = GradedElement.one()


def el(s, c=1):
    return GradedElement.diagram(s, c)


def test_combine():
    assert combine(CUP, CUP, 1, -1).is_zero()
    assert combine(ONE_EL, CUP).grades() == {0, 1}
    a = el("(())", Q)
    assert combine(a, GradedElement.zero(), Q, 5) == a.scale(Q)


def test_cup_squared():
    assert CUP * CUP == el("()()") + el("()") + el("", DELTA)
    assert trace(CUP * CUP) == DELTA
    assert (CUP * CUP) * CUP == CUP * (CUP * CUP)


def test_multiply_matches_oracle():
    rng = random.Random(1)
    q0 = Fraction(3, 2)
    for _ in range(20):
        a, b = random_element(rng, 3), random_element(rng, 3)
        assert element_at(a * b, q0) == multiply_at(element_at(a, q0), element_at(b, q0), q0 * q0)


def test_unit_and_bullet():
    rng = random.Random(2)
    for _ in range(20):
        a = random_element(rng, 3)
        assert ONE_EL * a == a == a * ONE_EL
        assert bullet(ONE_EL, a) == a
    assert bullet(CUP, CUP) == el("()()")


def test_inner_examples():
    assert inner(CUP, CUP) == DELTA
    assert inner(el("()()"), el("(())")) == DELTA
    assert inner(ONE_EL, CUP) == 0


def test_inner_matches_oracle():
    rng = random.Random(3)
    q0 = Fraction(5, 3)
    for _ in range(20):
        a, b = random_element(rng, 3), random_element(rng, 3)
        assert inner(a, b).evaluate(q0) == inner_at(element_at(a, q0), element_at(b, q0), q0 * q0)


def test_trace_and_adjoint():
    assert trace(ONE_EL) == 1
    assert trace(CUP) == 0
    assert adjoint(CUP) == CUP
    assert adjoint(el("()(())", Q)) == el("(())()", Q)
    rng = random.Random(4)
    for _ in range(20):
        a = random_element(rng, 3)
        assert trace(a * adjoint(a)) == inner(a, a)


def test_algebra_laws_random():
    rng = random.Random(5)
    for _ in range(10):
        a, b, c = (random_element(rng, 2) for _ in range(3))
        assert (a * b) * c == a * (b * c)
        assert trace(a * b) == trace(b * a)
        assert adjoint(a * b) == adjoint(b) * adjoint(a)


def test_bullet_factorizes_inner_product():
    for n in range(3):
        for m in range(3):
            P, R = enumerate_diagrams(n), enumerate_diagrams(m)
            for a in P:
                for c in P:
                    for b in R:
                        for d in R:
                            lhs = inner(bullet(el(a.string), el(b.string)), bullet(el(c.string), el(d.string)))
                            assert lhs == inner(el(a.string), el(c.string)) * inner(el(b.string), el(d.string))


def test_bullet_norm_random():
    rng = random.Random(6)
    for _ in range(10):
        a = sum((el(d.string, rng.randint(-3, 3)) for d in enumerate_diagrams(2)), GradedElement.zero())
        b = sum((el(d.string, rng.randint(-3, 3)) for d in enumerate_diagrams(3)), GradedElement.zero())
        assert norm2(bullet(a, b)) == norm2(a) * norm2(b)


def test_gram_positive_at_2():
    for n in range(6):
        G = gram_at(n, 2)
        _, pivots = ldl(G)
        assert all(p > 0 for p in pivots)
        # float cross-check
        assert np.linalg.eigvalsh(np.array(G, dtype=float)).min() > 0
        loops = gram_matrix(n)
        assert loops == [list(r) for r in zip(*loops)]


def test_left_matrix_identity_and_cup_column():
    L = left_matrix(ONE_EL, 3)
    n = L.size
    assert all(L.entries[i][j] == (1 if i == j else 0) for i in range(n) for j in range(n))
    Lc = left_matrix(CUP, 4)
    col = Lc.column(Lc.basis.index(ONE_EL.sorted_terms()[0][0]))
    cup_row = Lc.basis.index(CUP.sorted_terms()[0][0])
    assert [i for i, c in enumerate(col) if c] == [cup_row] and col[cup_row] == 1


def test_left_right_commute_inside_boundary():
    N = 4
    L, R = left_matrix(CUP, N), right_matrix(CUP, N)
    assert L.boundary == N - 1
    C = (L @ R) - (R @ L)
    for j, b in enumerate(C.basis):
        if b.n <= N - 2:
            assert all(not C.entries[i][j] for i in range(C.size))
