"""The graded *-algebra Gr(P) for Temperley-Lieb.

Elements are finitely supported combinations of diagrams of any grade with
:class:`~gjs_cup.scalar.Scalar` coefficients.  ``a * b`` is the stitch-sum
product (sum over the number ``j`` of strands joined, each closed loop weighted
by ``delta``), :meth:`GradedElement.bullet` is side-by-side placement, and
:func:`inner` glues against the mirror image.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational

from .diagrams import (
    Diagram,
    cap,
    close_pairing,
    concat_diagrams,
    enumerate_diagrams,
    from_string,
    reflect,
    stitch,
)
from .scalar import DELTA, ONE, ZERO, Scalar, as_scalar

__all__ = [
    "GradedElement",
    "OperatorMatrix",
    "combine",
    "multiply",
    "bullet",
    "inner",
    "norm2",
    "trace",
    "adjoint",
    "cap_element",
    "left_matrix",
    "right_matrix",
    "truncated_basis",
    "gram_matrix",
    "gram_at",
    "delta_power",
]

_DELTA_POWERS: list[Scalar] = [ONE]


def delta_power(k: int) -> Scalar:
    while len(_DELTA_POWERS) <= k:
        _DELTA_POWERS.append(_DELTA_POWERS[-1] * DELTA)
    return _DELTA_POWERS[k]


class GradedElement:
    """A finite linear combination of diagrams.  Immutable."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for d, c in dict(terms).items():
                if isinstance(d, str):
                    d = from_string(d)
                c = as_scalar(c)
                if c:
                    clean[d] = c
        self.terms: dict[Diagram, Scalar] = clean
        self._hash = None

    @classmethod
    def _wrap(cls, terms: dict) -> "GradedElement":
        obj = object.__new__(cls)
        obj.terms = {d: c for d, c in terms.items() if c}
        obj._hash = None
        return obj

    @classmethod
    def diagram(cls, d: Diagram | str, coeff=ONE) -> "GradedElement":
        if isinstance(d, str):
            d = from_string(d)
        return cls._wrap({d: as_scalar(coeff)})

    @classmethod
    def one(cls) -> "GradedElement":
        return cls.diagram("")

    @classmethod
    def cup(cls) -> "GradedElement":
        return cls.diagram("()")

    @classmethod
    def zero(cls) -> "GradedElement":
        return cls._wrap({})

    # -- structure --------------------------------------------------------

    def grades(self) -> set[int]:
        return {d.n for d in self.terms}

    def max_grade(self) -> int:
        return max((d.n for d in self.terms), default=-1)

    def homogeneous_part(self, n: int) -> "GradedElement":
        return GradedElement._wrap({d: c for d, c in self.terms.items() if d.n == n})

    def truncate(self, n_max: int) -> "GradedElement":
        return GradedElement._wrap({d: c for d, c in self.terms.items() if d.n <= n_max})

    def coefficient(self, d: Diagram | str) -> Scalar:
        if isinstance(d, str):
            d = from_string(d)
        return self.terms.get(d, ZERO)

    def is_zero(self) -> bool:
        return not self.terms

    def sorted_terms(self) -> list[tuple[Diagram, Scalar]]:
        return sorted(self.terms.items(), key=lambda t: (t[0].n, t[0].string))

    def map_coefficients(self, f) -> "GradedElement":
        return GradedElement._wrap({d: f(c) for d, c in self.terms.items()})

    # -- vector space -----------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, GradedElement):
            return NotImplemented
        out = dict(self.terms)
        for d, c in other.terms.items():
            out[d] = out[d] + c if d in out else c
        return GradedElement._wrap(out)

    def __neg__(self):
        return GradedElement._wrap({d: -c for d, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, GradedElement):
            return NotImplemented
        out = dict(self.terms)
        for d, c in other.terms.items():
            out[d] = out[d] - c if d in out else -c
        return GradedElement._wrap(out)

    def scale(self, c) -> "GradedElement":
        c = as_scalar(c)
        if not c:
            return GradedElement.zero()
        return GradedElement._wrap({d: c * v for d, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, GradedElement):
            return multiply(self, other)
        if isinstance(other, (Scalar, int, Rational)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (Scalar, int, Rational)):
            return self.scale(other)
        return NotImplemented

    def bullet(self, other: "GradedElement") -> "GradedElement":
        return bullet(self, other)

    def __eq__(self, other):
        if not isinstance(other, GradedElement):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __repr__(self):
        if not self.terms:
            return "GradedElement(0)"
        body = " + ".join(f"({c})*[{d.string or '1'}]" for d, c in self.sorted_terms())
        return f"GradedElement({body})"

    # -- serialization ----------------------------------------------------

    def to_json(self, q0=None) -> dict:
        """Coefficients as scalar JSON, or as exact rational strings at ``q = q0``."""
        def coeff(c):
            if q0 is None:
                return c.to_json()
            v = c.evaluate(q0)
            return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"

        return {
            "terms": [
                {"n": d.n, "d": d.string, "c": coeff(c)} for d, c in self.sorted_terms()
            ]
        }

    @classmethod
    def from_json(cls, obj: dict) -> "GradedElement":
        terms = {}
        for t in obj["terms"]:
            d = from_string(t["d"])
            if d.n != t["n"]:
                raise ValueError(f"grade {t['n']} does not match diagram {t['d']!r}")
            terms[d] = Scalar.from_json(t["c"])
        return cls(terms)


def combine(a: GradedElement, b: GradedElement, c1=ONE, c2=ONE) -> GradedElement:
    """``c1*a + c2*b``."""
    return a.scale(c1) + b.scale(c2)


def _accumulate(out: dict, d: Diagram, c: Scalar) -> None:
    prev = out.get(d)
    out[d] = c if prev is None else prev + c


def multiply(a: GradedElement, b: GradedElement) -> GradedElement:
    out: dict = {}
    for d, c in a.terms.items():
        A = len(d.partner)
        for e, c2 in b.terms.items():
            cc = c * c2
            for j in range(min(A, len(e.partner)) + 1):
                loops, res = stitch(d, e, j)
                _accumulate(out, res, cc * delta_power(loops) if loops else cc)
    return GradedElement._wrap(out)


def bullet(a: GradedElement, b: GradedElement) -> GradedElement:
    out: dict = {}
    for d, c in a.terms.items():
        for e, c2 in b.terms.items():
            _accumulate(out, concat_diagrams(d, e), c * c2)
    return GradedElement._wrap(out)


def inner(a: GradedElement, b: GradedElement) -> Scalar:
    """The inner product; distinct grades are orthogonal.  Coefficients are real,
    so no conjugation is applied."""
    by_grade = defaultdict(list)
    for e, c in b.terms.items():
        by_grade[e.n].append((e, c))
    total = defaultdict(lambda: ZERO)
    for d, c in a.terms.items():
        others = by_grade.get(d.n)
        if not others:
            continue
        # group by loop count, multiply once per count
        acc: dict[int, Scalar] = {}
        for e, c2 in others:
            k = close_pairing(d, e)
            acc[k] = acc[k] + c2 if k in acc else c2
        for k, s in acc.items():
            total[k] = total[k] + c * s
    result = ZERO
    for k, s in total.items():
        result = result + s * delta_power(k)
    return result


def norm2(a: GradedElement) -> Scalar:
    """Squared 2-norm ``<a, a>``."""
    return inner(a, a)


def trace(a: GradedElement) -> Scalar:
    return a.coefficient("")


def adjoint(a: GradedElement) -> GradedElement:
    return GradedElement._wrap({reflect(d): c for d, c in a.terms.items()})


def cap_element(a: GradedElement, side: str) -> GradedElement:
    """Apply the left or right cap to every term (grade-0 terms are an error)."""
    out: dict = {}
    for d, c in a.terms.items():
        loops, res = cap(d, side)
        _accumulate(out, res, c * DELTA if loops else c)
    return GradedElement._wrap(out)


# -- truncated operator matrices --------------------------------------------


def truncated_basis(N: int) -> list[Diagram]:
    """Diagram basis of the direct sum of P_0, ..., P_N, ordered by grade then string."""
    return [d for n in range(N + 1) for d in enumerate_diagrams(n)]


@dataclass
class OperatorMatrix:
    """Matrix of an operator on a finite-grade truncation.

    ``entries[i][j]`` is the coefficient of ``basis[i]`` in the image of
    ``basis[j]``.  Only columns whose input grade is at most ``boundary`` are
    exact; images of other columns lost their components of grade above the
    cutoff.
    """

    basis: list
    entries: list[list]
    boundary: int
    labels: list = field(default_factory=list)

    @property
    def size(self) -> int:
        return len(self.basis)

    def exact_columns(self) -> list[int]:
        return [j for j, b in enumerate(self.basis) if _grade_of(b) <= self.boundary]

    def __matmul__(self, other: "OperatorMatrix") -> "OperatorMatrix":
        if self.basis != other.basis:
            raise ValueError("basis mismatch")
        n = self.size
        out = [[ZERO] * n for _ in range(n)]
        for j in range(n):
            col = [(k, other.entries[k][j]) for k in range(n) if other.entries[k][j]]
            for i in range(n):
                row = self.entries[i]
                s = ZERO
                for k, v in col:
                    if row[k]:
                        s = s + row[k] * v
                out[i][j] = s
        return OperatorMatrix(self.basis, out, min(self.boundary, other.boundary), self.labels)

    def __sub__(self, other: "OperatorMatrix") -> "OperatorMatrix":
        n = self.size
        out = [[self.entries[i][j] - other.entries[i][j] for j in range(n)] for i in range(n)]
        return OperatorMatrix(self.basis, out, min(self.boundary, other.boundary), self.labels)

    def column(self, j: int) -> list:
        return [self.entries[i][j] for i in range(self.size)]


def _grade_of(b) -> int:
    if isinstance(b, Diagram):
        return b.n
    return b.grade if hasattr(b, "grade") else b[0]


def _action_matrix(a: GradedElement, N: int, left: bool) -> OperatorMatrix:
    if a.max_grade() > N:
        raise ValueError(f"element has grade {a.max_grade()} above the cutoff {N}")
    basis = truncated_basis(N)
    index = {d: i for i, d in enumerate(basis)}
    n = len(basis)
    entries = [[ZERO] * n for _ in range(n)]
    for j, d in enumerate(basis):
        e = GradedElement.diagram(d)
        img = multiply(a, e) if left else multiply(e, a)
        for r, c in img.terms.items():
            i = index.get(r)
            if i is not None:
                entries[i][j] = c
    boundary = N - max(a.max_grade(), 0)
    return OperatorMatrix(basis, entries, boundary)


def left_matrix(a: GradedElement, N: int) -> OperatorMatrix:
    """Matrix of ``b -> a*b`` on grades ``<= N``."""
    return _action_matrix(a, N, left=True)


def right_matrix(a: GradedElement, N: int) -> OperatorMatrix:
    """Matrix of ``b -> b*a`` on grades ``<= N``."""
    return _action_matrix(a, N, left=False)


def gram_matrix(n: int) -> list[list[int]]:
    """Loop counts of the diagram Gram matrix of P_n; the entry is ``delta**count``."""
    basis = enumerate_diagrams(n)
    return [[close_pairing(d, e) for e in basis] for d in basis]


def gram_at(n: int, q0) -> list[list[Fraction]]:
    delta = Fraction(q0) ** 2
    return [[delta ** k for k in row] for row in gram_matrix(n)]
