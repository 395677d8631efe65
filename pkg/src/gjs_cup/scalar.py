"""Exact scalars: rational functions in the formal variable ``q`` over the rationals.

The loop modulus is ``delta = q**2`` so that half-integer powers of ``delta``
stay inside the ring.  A value is stored in the canonical form::

    q**shift * num / den

with ``num``, ``den`` integer polynomials, ``num(0) != 0`` (unless the value is
zero), ``den(0) > 0`` and ``gcd(num, den) == 1`` over ``Z[q]``.  Equal values
therefore have identical representations, so equality and hashing are
structural.

Polynomial arithmetic is delegated to FLINT (``python-flint``).
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

from flint import fmpz_poly

__all__ = [
    "Scalar", "ScalarPoleError", "Q", "DELTA", "ONE", "ZERO", "as_scalar", "primitive_multiplier",
]

_ONE_POLY = fmpz_poly([1])
_ZERO_POLY = fmpz_poly([])


class ScalarPoleError(ZeroDivisionError):
    """Raised on division by zero or evaluation at a pole."""


def _valuation(p):
    i = 0
    while p[i] == 0:
        i += 1
    return i


class Scalar:
    """An immutable element of Q(q)."""

    __slots__ = ("_num", "_den", "_shift", "_hash")

    def __init__(self, value=0):
        if isinstance(value, Scalar):
            self._num, self._den, self._shift = value._num, value._den, value._shift
        elif isinstance(value, int):
            self._num = fmpz_poly([value]) if value else _ZERO_POLY
            self._den, self._shift = _ONE_POLY, 0
        elif isinstance(value, Rational):
            value = Fraction(value)
            self._num = fmpz_poly([value.numerator]) if value else _ZERO_POLY
            self._den = fmpz_poly([value.denominator])
            self._shift = 0
        else:
            raise TypeError(f"cannot convert {type(value).__name__} to Scalar")
        self._hash = None

    # -- construction -----------------------------------------------------

    @classmethod
    def _raw(cls, num, den, shift):
        obj = object.__new__(cls)
        obj._num, obj._den, obj._shift, obj._hash = num, den, shift, None
        return obj

    @classmethod
    def _make(cls, num, den, shift):
        """Canonicalize ``q**shift * num / den``."""
        if den.is_zero():
            raise ScalarPoleError("zero denominator")
        if num.is_zero():
            return ZERO
        v = _valuation(num)
        if v:
            num = num.right_shift(v)
            shift += v
        v = _valuation(den)
        if v:
            den = den.right_shift(v)
            shift -= v
        if not den.is_one():
            g = num.gcd(den)
            if not g.is_one():
                num = num // g
                den = den // g
            if den[0] < 0:
                num, den = -num, -den
        return cls._raw(num, den, shift)

    @classmethod
    def monomial(cls, k: int, coeff: int = 1) -> "Scalar":
        """Return ``coeff * q**k``."""
        if coeff == 0:
            return ZERO
        return cls._raw(fmpz_poly([coeff]), _ONE_POLY, k)

    @classmethod
    def laurent(cls, coeffs: dict[int, int]) -> "Scalar":
        """Build an integer Laurent polynomial from ``{degree: coefficient}``."""
        coeffs = {d: c for d, c in coeffs.items() if c}
        if not coeffs:
            return ZERO
        lo = min(coeffs)
        dense = [0] * (max(coeffs) - lo + 1)
        for d, c in coeffs.items():
            dense[d - lo] = c
        return cls._make(fmpz_poly(dense), _ONE_POLY, lo)

    @classmethod
    def from_terms(cls, num: list, den: list) -> "Scalar":
        """Inverse of :meth:`to_json`: lists of ``[degree, coefficient]`` pairs."""
        n = cls.laurent({int(d): int(c) for d, c in num})
        dd = cls.laurent({int(d): int(c) for d, c in den})
        return n / dd

    # -- inspection -------------------------------------------------------

    def is_zero(self) -> bool:
        return self._num.is_zero()

    def is_laurent(self) -> bool:
        """True when the denominator is 1, i.e. the value lies in Z[q, 1/q] (up to
        a rational content)."""
        return self._den.is_one()

    def numerator_terms(self) -> list[tuple[int, int]]:
        return [(i + self._shift, int(c)) for i, c in enumerate(self._num.coeffs()) if c]

    def denominator_terms(self) -> list[tuple[int, int]]:
        return [(i, int(c)) for i, c in enumerate(self._den.coeffs()) if c]

    def to_json(self) -> dict:
        return {
            "num": [[d, str(c)] for d, c in self.numerator_terms()],
            "den": [[d, str(c)] for d, c in self.denominator_terms()],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Scalar":
        return cls.from_terms(obj["num"], obj["den"])

    def as_rational(self) -> Fraction:
        """Return the value as a rational number if it is constant in ``q``."""
        if self.is_zero():
            return Fraction(0)
        if self._shift or self._num.degree() or self._den.degree():
            raise ValueError(f"{self} is not constant in q")
        return Fraction(int(self._num[0]), int(self._den[0]))

    # -- evaluation -------------------------------------------------------

    def __call__(self, q0) -> Fraction:
        return self.evaluate(q0)

    def evaluate(self, q0) -> Fraction:
        """Exact value at the rational point ``q = q0``."""
        q0 = Fraction(q0)
        den = _horner(self._den, q0)
        if den == 0 or (q0 == 0 and self._shift < 0):
            raise ScalarPoleError(f"{self} has a pole at q = {q0}")
        if self.is_zero():
            return Fraction(0)
        return _horner(self._num, q0) * q0 ** self._shift / den

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Scalar):
            try:
                other = as_scalar(other)
            except TypeError:
                return NotImplemented
        if self._num.is_zero():
            return other
        if other._num.is_zero():
            return self
        a, b = self._shift, other._shift
        lo = a if a < b else b
        na = self._num.left_shift(a - lo) if a > lo else self._num
        nb = other._num.left_shift(b - lo) if b > lo else other._num
        if self._den.is_one() and other._den.is_one():
            return Scalar._make(na + nb, _ONE_POLY, lo)
        if self._den == other._den:
            return Scalar._make(na + nb, self._den, lo)
        return Scalar._make(na * other._den + nb * self._den, self._den * other._den, lo)

    __radd__ = __add__

    def __neg__(self):
        if self._num.is_zero():
            return self
        return Scalar._raw(-self._num, self._den, self._shift)

    def __pos__(self):
        return self

    def __sub__(self, other):
        if not isinstance(other, Scalar):
            try:
                other = as_scalar(other)
            except TypeError:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return as_scalar(other) - self

    def __mul__(self, other):
        if not isinstance(other, Scalar):
            try:
                other = as_scalar(other)
            except TypeError:
                return NotImplemented
        if self._num.is_zero() or other._num.is_zero():
            return ZERO
        shift = self._shift + other._shift
        if self._den.is_one() and other._den.is_one():
            return Scalar._raw(self._num * other._num, _ONE_POLY, shift)
        return Scalar._make(self._num * other._num, self._den * other._den, shift)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, Scalar):
            try:
                other = as_scalar(other)
            except TypeError:
                return NotImplemented
        if other._num.is_zero():
            raise ScalarPoleError("division by zero scalar")
        if self._num.is_zero():
            return ZERO
        return Scalar._make(
            self._num * other._den, self._den * other._num, self._shift - other._shift
        )

    def __rtruediv__(self, other):
        return as_scalar(other) / self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return ONE / (self ** -k)
        if self._num.is_zero():
            return ONE if k == 0 else ZERO
        return Scalar._raw(self._num ** k, self._den ** k, self._shift * k)

    def shifted(self, k: int) -> "Scalar":
        """Multiply by ``q**k``."""
        if self._num.is_zero() or not k:
            return self
        return Scalar._raw(self._num, self._den, self._shift + k)

    # -- comparison -------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Scalar):
            try:
                other = as_scalar(other)
            except TypeError:
                return NotImplemented
        return (
            self._shift == other._shift
            and self._num == other._num
            and self._den == other._den
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(
                (self._shift, tuple(int(c) for c in self._num.coeffs()),
                 tuple(int(c) for c in self._den.coeffs()))
            )
        return self._hash

    def __bool__(self):
        return not self._num.is_zero()

    # -- display ----------------------------------------------------------

    def __str__(self):
        num = _laurent_str(self.numerator_terms())
        if self._den.is_one():
            return num
        den = _laurent_str(self.denominator_terms())
        if len(self.numerator_terms()) > 1:
            num = f"({num})"
        if len(self.denominator_terms()) > 1:
            den = f"({den})"
        return f"{num}/{den}"

    def __repr__(self):
        return f"Scalar({self})"


def _horner(p, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p.coeffs()):
        acc = acc * x + int(c)
    return acc


def _laurent_str(terms) -> str:
    if not terms:
        return "0"
    out = []
    for d, c in terms:
        if d == 0:
            mono = str(abs(c))
        else:
            base = "q" if d == 1 else f"q^{d}"
            mono = base if abs(c) == 1 else f"{abs(c)}*{base}"
        sign = "-" if c < 0 else "+"
        out.append((sign, mono))
    first = ("-" if out[0][0] == "-" else "") + out[0][1]
    return " ".join([first] + [f"{s} {m}" for s, m in out[1:]])


def as_scalar(x) -> Scalar:
    if isinstance(x, Scalar):
        return x
    if isinstance(x, (int, Rational)):
        return Scalar(x)
    raise TypeError(f"cannot convert {type(x).__name__} to Scalar")


ZERO = Scalar._raw(_ZERO_POLY, _ONE_POLY, 0)
ONE = Scalar._raw(_ONE_POLY, _ONE_POLY, 0)
Q = Scalar.monomial(1)
DELTA = Scalar.monomial(2)


def primitive_multiplier(values) -> Scalar:
    """A scalar ``s`` such that every ``s * v`` is an integer polynomial in ``q``,
    the lowest power of ``q`` present is ``q**0`` and the coefficients have no
    common polynomial factor.  The sign is fixed by the first nonzero value, whose
    lowest coefficient becomes positive."""
    values = [v for v in values if v]
    if not values:
        return ONE
    den = _ONE_POLY
    for v in values:
        if not v._den.is_one():
            den = den * v._den // den.gcd(v._den)
    g = None
    for v in values:
        num = v._num * (den // v._den)
        g = num if g is None else g.gcd(num)
        if g.is_one():
            break
    shift = min(v._shift for v in values)
    s = Scalar._make(den, g, -shift)
    lead = values[0] * s
    if lead._num[0] < 0:
        s = -s
    return s
