"""A small expression language for graded elements.

::

    expr    := term (('+' | '-') term)*
    term    := factor ('*' factor)*
    factor  := atom ('.' atom)*
    atom    := scalar? primary
    primary := '1' | 'cup' ('^' int)? | 'v[' int ',' int ']' | '(' expr ')'
    scalar  := rational | 'q' '^' int | 'delta'

``*`` is the stitch product and ``.`` the bullet product.  A scalar with no
primary after it stands for that multiple of ``1``, so ``delta`` and ``3/2`` are
valid expressions.  Columns in error messages are 0-based; an unexpected end of
input is reported at the last token.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .algebra import GradedElement, bullet, multiply
from .scalar import DELTA, Q, Scalar

__all__ = [
    "ExprError",
    "ExprSyntaxError",
    "UnknownReferenceError",
    "One", "Cup", "VRef", "Rational", "QPow", "Delta", "Scaled",
    "Add", "Sub", "Mult", "Bullet",
    "tokenize",
    "parse",
    "to_text",
    "evaluate",
]


class ExprError(ValueError):
    pass


class ExprSyntaxError(ExprError):
    def __init__(self, message: str, text: str, pos: int):
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1)
        super().__init__(f"{message} at line {line}, column {col}")
        self.line, self.column, self.pos = line, col, pos


class UnknownReferenceError(ExprError):
    pass


# -- AST -----------------------------------------------------------------------


@dataclass(frozen=True)
class One:
    pass


@dataclass(frozen=True)
class Cup:
    k: int = 1
    explicit: bool = False  # written with '^'


@dataclass(frozen=True)
class VRef:
    m: int
    i: int


@dataclass(frozen=True)
class Rational:
    value: Fraction


@dataclass(frozen=True)
class QPow:
    k: int


@dataclass(frozen=True)
class Delta:
    pass


ScalarNode = Union[Rational, QPow, Delta]


@dataclass(frozen=True)
class Scaled:
    scalar: ScalarNode
    body: "Node"


@dataclass(frozen=True)
class Add:
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Sub:
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Mult:
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Bullet:
    left: "Node"
    right: "Node"


Node = Union[One, Cup, VRef, Scaled, Add, Sub, Mult, Bullet]


# -- lexer ---------------------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>[A-Za-z_]\w*)|(?P<op>[-+*.^\[\],()]))"
)


@dataclass(frozen=True)
class Token:
    kind: str  # "num", "name", "op", "end"
    text: str
    pos: int


def tokenize(text: str) -> list[Token]:
    out, pos = [], 0
    while True:
        m = _TOKEN.match(text, pos)
        if not m:
            rest = len(text) - len(text[pos:].lstrip())
            if rest == len(text):
                break
            raise ExprSyntaxError(f"unexpected character {text[rest]!r}", text, rest)
        kind = m.lastgroup
        out.append(Token(kind, m.group(kind), m.start(kind)))
        pos = m.end()
    out.append(Token("end", "", out[-1].pos if out else 0))
    return out


# -- parser --------------------------------------------------------------------


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def error(self, msg: str):
        t = self.tok
        what = "unexpected end of input" if t.kind == "end" else f"unexpected {t.text!r}"
        raise ExprSyntaxError(f"{msg}: {what}", self.text, t.pos)

    def accept(self, text: str) -> bool:
        if self.tok.kind in ("op", "name") and self.tok.text == text:
            self.i += 1
            return True
        return False

    def expect(self, text: str) -> None:
        if not self.accept(text):
            self.error(f"expected {text!r}")

    def integer(self) -> int:
        neg = self.accept("-")
        t = self.tok
        if t.kind != "num" or "/" in t.text:
            self.error("expected an integer")
        self.i += 1
        return -int(t.text) if neg else int(t.text)

    def parse(self) -> Node:
        node = self.expr()
        if self.tok.kind != "end":
            self.error("expected end of input")
        return node

    def expr(self) -> Node:
        node = self.term()
        while self.tok.kind == "op" and self.tok.text in "+-":
            op = self.tok.text
            self.i += 1
            rhs = self.term()
            node = Add(node, rhs) if op == "+" else Sub(node, rhs)
        return node

    def term(self) -> Node:
        node = self.factor()
        while self.accept("*"):
            node = Mult(node, self.factor())
        return node

    def factor(self) -> Node:
        node = self.atom()
        while self.accept("."):
            node = Bullet(node, self.atom())
        return node

    def _starts_primary(self, tok: Token) -> bool:
        return (tok.kind == "num" and tok.text == "1") or (
            tok.kind == "name" and tok.text in ("cup", "v")
        ) or (tok.kind == "op" and tok.text == "(")

    def atom(self) -> Node:
        t = self.tok
        scalar = None
        if t.kind == "num":
            nxt = self.toks[self.i + 1]
            if t.text == "1" and not self._starts_primary(nxt):
                self.i += 1
                return One()
            self.i += 1
            scalar = Rational(Fraction(t.text))
        elif t.kind == "name" and t.text == "q":
            self.i += 1
            self.expect("^")
            scalar = QPow(self.integer())
        elif t.kind == "name" and t.text == "delta":
            self.i += 1
            scalar = Delta()
        if scalar is not None:
            if not self._starts_primary(self.tok):
                return Scaled(scalar, One())
            return Scaled(scalar, self.primary())
        return self.primary()

    def primary(self) -> Node:
        t = self.tok
        if t.kind == "num" and t.text == "1":
            self.i += 1
            return One()
        if t.kind == "name" and t.text == "cup":
            self.i += 1
            if self.accept("^"):
                return Cup(self.integer(), True)
            return Cup(1)
        if t.kind == "name" and t.text == "v":
            self.i += 1
            self.expect("[")
            m = self.integer()
            self.expect(",")
            i = self.integer()
            self.expect("]")
            return VRef(m, i)
        if self.accept("("):
            node = self.expr()
            self.expect(")")
            return node
        self.error("expected '1', 'cup', 'v[m,i]' or '('")


def parse(text: str) -> Node:
    return _Parser(text).parse()


# -- printer -------------------------------------------------------------------

_LEVEL = {Add: 1, Sub: 1, Mult: 2, Bullet: 3}
_SYMBOL = {Add: "+", Sub: "-", Mult: "*", Bullet: "."}


def _scalar_text(s: ScalarNode) -> str:
    if isinstance(s, Rational):
        return str(s.value)
    if isinstance(s, QPow):
        return f"q^{s.k}"
    return "delta"


def to_text(node: Node) -> str:
    """Render ``node`` so that ``parse(to_text(node)) == node``."""
    if isinstance(node, One):
        return "1"
    if isinstance(node, Cup):
        return f"cup^{node.k}" if node.explicit else "cup"
    if isinstance(node, VRef):
        return f"v[{node.m},{node.i}]"
    if isinstance(node, Scaled):
        body = node.body
        inner = to_text(body)
        if type(body) in _LEVEL or isinstance(body, Scaled):
            inner = f"({inner})"
        return f"{_scalar_text(node.scalar)} {inner}"
    level = _LEVEL[type(node)]
    left, right = to_text(node.left), to_text(node.right)
    if _LEVEL.get(type(node.left), 9) < level:
        left = f"({left})"
    if _LEVEL.get(type(node.right), 9) <= level:
        right = f"({right})"
    return f"{left} {_SYMBOL[type(node)]} {right}"


# -- evaluation ----------------------------------------------------------------


def _scalar_value(s: ScalarNode) -> Scalar:
    if isinstance(s, Rational):
        return Scalar(s.value)
    if isinstance(s, QPow):
        return Q ** s.k
    return DELTA


def evaluate(node: Node, max_grade: int | None = None, resolve=None) -> GradedElement:
    """Evaluate to a graded element.

    ``resolve(m, i)`` returns the stored basis vector ``v[m,i]``; by default the
    engine's V_m basis.  With ``max_grade`` set, any intermediate result above
    that grade is an error.
    """
    if resolve is None:
        resolve = _default_resolve

    def check(x: GradedElement) -> GradedElement:
        if max_grade is not None and x.max_grade() > max_grade:
            raise ExprError(f"intermediate result has grade {x.max_grade()} > {max_grade}")
        return x

    def ev(n: Node) -> GradedElement:
        if isinstance(n, One):
            return GradedElement.one()
        if isinstance(n, Cup):
            from .cups import cup_power

            return check(cup_power(n.k))
        if isinstance(n, VRef):
            return check(resolve(n.m, n.i))
        if isinstance(n, Scaled):
            return ev(n.body).scale(_scalar_value(n.scalar))
        a, b = ev(n.left), ev(n.right)
        if isinstance(n, Add):
            return a + b
        if isinstance(n, Sub):
            return a - b
        if isinstance(n, Mult):
            return check(multiply(a, b))
        return check(bullet(a, b))

    return ev(node)


def _default_resolve(m: int, i: int) -> GradedElement:
    from .cups import vspace

    if m < 1:
        raise UnknownReferenceError(f"v[{m},{i}]: V_m needs m >= 1")
    vecs = vspace(m).vectors
    if not 0 <= i < len(vecs):
        raise UnknownReferenceError(f"v[{m},{i}]: V_{m} has dimension {len(vecs)}")
    return vecs[i]
