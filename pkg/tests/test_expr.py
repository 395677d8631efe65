from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from gjs_cup import DELTA, GradedElement, Q
from gjs_cup.expr import (
    Add,
    Bullet,
    Cup,
    Delta,
    ExprError,
    ExprSyntaxError,
    Mult,
    One,
    QPow,
    Rational,
    Scaled,
    Sub,
    UnknownReferenceError,
    VRef,
    evaluate,
    parse,
    to_text,
)


def test_parse_examples():
    assert parse("cup * cup") == Mult(Cup(), Cup())
    assert parse("cup . v[2,0] . cup^2") == Bullet(Bullet(Cup(), VRef(2, 0)), Cup(2, True))


def test_precedence():
    assert parse("1 + cup * cup . cup") == Add(One(), Mult(Cup(), Bullet(Cup(), Cup())))
    assert parse("cup - 1 - cup") == Sub(Sub(Cup(), One()), Cup())
    assert parse("q^2 cup . cup") == Bullet(Scaled(QPow(2), Cup()), Cup())
    assert parse("delta") == Scaled(Delta(), One())
    assert parse("3/2 (cup + 1)") == Scaled(Rational(Fraction(3, 2)), Add(Cup(), One()))


def test_syntax_error_column():
    with pytest.raises(ExprSyntaxError) as e:
        parse("q^-1 (cup + 1")
    assert e.value.column == 12 and e.value.line == 1
    with pytest.raises(ExprSyntaxError) as e:
        parse("cup\n  + *")
    assert (e.value.line, e.value.column) == (2, 4)
    for bad in ["", "cup cup", "v[2]", "cup^", "q cup", "cup $", "(cup"]:
        with pytest.raises(ExprSyntaxError):
            parse(bad)


def test_eval_examples():
    cup = GradedElement.cup()
    assert evaluate(parse("cup * cup")) == cup * cup
    assert evaluate(parse("cup * cup")) == GradedElement.diagram("()()") + cup + GradedElement.diagram("", DELTA)
    assert evaluate(parse("1 . cup")) == cup
    assert evaluate(parse("cup^-1")).is_zero()
    assert evaluate(parse("q^-1 (cup + 1)")) == (cup + GradedElement.one()).scale(Q**-1)


def test_eval_errors():
    with pytest.raises(UnknownReferenceError):
        evaluate(parse("v[2,1]"))
    with pytest.raises(UnknownReferenceError):
        evaluate(parse("v[0,0]"))
    with pytest.raises(ExprError):
        evaluate(parse("cup^3 * cup"), max_grade=3)


ints = st.integers(-3, 3)
scalar_nodes = st.one_of(
    st.fractions(min_value=0, max_value=20, max_denominator=5).filter(lambda f: f > 0).map(Rational),
    ints.map(QPow),
    st.just(Delta()),
)
primaries = st.one_of(
    st.just(One()),
    st.just(Cup()),
    ints.map(lambda k: Cup(k, True)),
    st.builds(VRef, st.integers(0, 4), st.integers(0, 3)),
)


def _extend(children):
    binary = st.sampled_from([Add, Sub, Mult, Bullet])
    return st.one_of(
        st.builds(lambda op, a, b: op(a, b), binary, children, children),
        st.builds(Scaled, scalar_nodes, children),
    )


exprs = st.recursive(primaries, _extend, max_leaves=8)


@settings(max_examples=200, deadline=None)
@given(exprs)
def test_print_parse_roundtrip(node):
    text = to_text(node)
    first = parse(text)
    assert parse(to_text(first)) == first
    assert to_text(first) == to_text(parse(to_text(first)))
