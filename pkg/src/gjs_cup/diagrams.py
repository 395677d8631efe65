"""Temperley-Lieb diagrams: non-crossing perfect matchings on the top edge of a box.

A diagram of grade ``n`` has ``2n`` boundary points numbered ``0..2n-1`` from
left to right (the distinguished first interval sits at the top left).  It is
stored as a partner tuple ``p`` with ``p[i]`` the point matched to ``i``.

Diagrams are interned, so two diagrams are equal iff they are the same object.
The planar operations return loop counts rather than powers of ``delta``; the
loop weight is applied by the algebra layer.
"""

from __future__ import annotations

import threading
from functools import lru_cache
from itertools import combinations

__all__ = [
    "Diagram",
    "PlanarBackend",
    "TemperleyLieb",
    "catalan",
    "enumerate_diagrams",
    "canonical_string",
    "from_string",
    "from_pairs",
    "concat_diagrams",
    "stitch",
    "cap",
    "close_pairing",
    "reflect",
    "cup_diagram",
    "cup_power_diagram",
    "brute_force_matchings",
]


class Diagram:
    """An interned non-crossing pairing.  Build with :func:`from_pairs` or
    :func:`from_string`, never directly."""

    __slots__ = ("partner", "n", "string", "__weakref__")

    def __init__(self, partner: tuple[int, ...], string: str):
        self.partner = partner
        self.n = len(partner) // 2
        self.string = string

    def pairs(self) -> list[tuple[int, int]]:
        """1-based pairs ``(i, j)`` with ``i < j``, as used in the box pictures."""
        return [(i + 1, j + 1) for i, j in enumerate(self.partner) if i < j]

    def __repr__(self):
        return f"Diagram({self.string!r})"

    def __lt__(self, other):
        return (self.n, self.string) < (other.n, other.string)

    def __reduce__(self):
        return (from_string, (self.string,))


_table: dict[tuple[int, ...], Diagram] = {}
_table_lock = threading.Lock()


def _intern(partner: tuple[int, ...]) -> Diagram:
    d = _table.get(partner)
    if d is not None:
        return d
    with _table_lock:
        d = _table.get(partner)
        if d is None:
            d = Diagram(partner, _partner_string(partner))
            _table[partner] = d
    return d


def _partner_string(partner) -> str:
    return "".join("(" if j > i else ")" for i, j in enumerate(partner))


def _check_partner(partner) -> None:
    m = len(partner)
    if m % 2:
        raise ValueError("a diagram needs an even number of boundary points")
    for i, j in enumerate(partner):
        if not 0 <= j < m or j == i or partner[j] != i:
            raise ValueError(f"not a perfect matching: {partner}")
    stack = []
    for i, j in enumerate(partner):
        if j > i:
            stack.append(i)
        elif not stack or stack.pop() != j:
            raise ValueError(f"pairing is crossing: {partner}")


def from_partner(partner, check: bool = True) -> Diagram:
    partner = tuple(partner)
    if check and partner not in _table:
        _check_partner(partner)
    return _intern(partner)


def from_pairs(pairs, n: int | None = None) -> Diagram:
    """Build a diagram from 1-based pairs, e.g. ``[(1, 4), (2, 3)]``."""
    pairs = list(pairs)
    m = 2 * len(pairs) if n is None else 2 * n
    partner = [-1] * m
    for i, j in pairs:
        if partner[i - 1] != -1 or partner[j - 1] != -1:
            raise ValueError(f"point used twice in {pairs}")
        partner[i - 1], partner[j - 1] = j - 1, i - 1
    if -1 in partner:
        raise ValueError(f"{pairs} does not cover all {m} points")
    return from_partner(partner)


def from_string(s: str) -> Diagram:
    """Parse a balanced-parenthesis string such as ``"()(())"``."""
    partner = [0] * len(s)
    stack = []
    for i, ch in enumerate(s):
        if ch == "(":
            stack.append(i)
        elif ch == ")":
            if not stack:
                raise ValueError(f"unbalanced diagram string {s!r}")
            j = stack.pop()
            partner[i], partner[j] = j, i
        else:
            raise ValueError(f"unexpected character {ch!r} in diagram string")
    if stack:
        raise ValueError(f"unbalanced diagram string {s!r}")
    return from_partner(partner, check=False)


def canonical_string(d: Diagram) -> str:
    return d.string


def catalan(n: int) -> int:
    c = 1
    for k in range(n):
        c = c * 2 * (2 * k + 1) // (k + 2)
    return c


@lru_cache(maxsize=None)
def _balanced(n: int) -> tuple[str, ...]:
    if n == 0:
        return ("",)
    out = []
    # "(" A ")" B with A of grade k, B of grade n-1-k
    for k in range(n):
        for a in _balanced(k):
            for b in _balanced(n - 1 - k):
                out.append("(" + a + ")" + b)
    return tuple(sorted(out))


def enumerate_diagrams(n: int) -> list[Diagram]:
    """All diagrams of grade ``n`` in canonical-string order."""
    if n < 0:
        raise ValueError("grade must be non-negative")
    return [from_string(s) for s in _balanced(n)]


def brute_force_matchings(n: int) -> list[frozenset]:
    """Every non-crossing perfect matching of ``2n`` points, found by filtering all
    perfect matchings.  Independent of :func:`enumerate_diagrams`; used as an
    oracle."""

    def matchings(points):
        if not points:
            yield []
            return
        first, rest = points[0], points[1:]
        for k, other in enumerate(rest):
            for m in matchings(rest[:k] + rest[k + 1:]):
                yield [(first, other)] + m

    def crossing(m):
        return any(i < k < j < l or k < i < l < j for (i, j), (k, l) in combinations(m, 2))

    return [frozenset(m) for m in matchings(list(range(1, 2 * n + 1))) if not crossing(m)]


# -- planar operations ------------------------------------------------------


def concat_diagrams(d1: Diagram, d2: Diagram) -> Diagram:
    """Side-by-side placement, ``d2`` to the right of ``d1``."""
    off = len(d1.partner)
    return from_partner(d1.partner + tuple(j + off for j in d2.partner), check=False)


def _stitch(a, b, j):
    A, B = len(a), len(b)
    # combined index space: a -> [0, A), b -> [A, A + B)
    # a's point A-1-t is glued to b's point t, for t < j
    left_free = A - j

    def across(p):
        if p < A:
            return A + (A - 1 - p)
        return A - 1 - (p - A)

    def arc(p):
        return a[p] if p < A else A + b[p - A]

    def is_free(p):
        return p < left_free or p >= A + j

    def out_index(p):
        return p if p < left_free else p - 2 * j

    size = A + B - 2 * j
    result = [0] * size
    seen = bytearray(A + B)
    for start in range(A + B):
        if not is_free(start) or seen[start]:
            continue
        p = start
        seen[p] = 1
        while True:
            p = arc(p)
            seen[p] = 1
            if is_free(p):
                break
            p = across(p)
            seen[p] = 1
        result[out_index(start)] = out_index(p)
        result[out_index(p)] = out_index(start)
    loops = 0
    for start in range(left_free, A):
        if seen[start]:
            continue
        loops += 1
        p = start
        while True:
            seen[p] = 1
            p = arc(p)
            seen[p] = 1
            p = across(p)
            if p == start:
                break
    return loops, tuple(result)


@lru_cache(maxsize=200_000)
def _stitch_cached(d1: Diagram, d2: Diagram, j: int) -> tuple[int, Diagram]:
    loops, partner = _stitch(d1.partner, d2.partner, j)
    return loops, from_partner(partner, check=False)


def stitch(d1: Diagram, d2: Diagram, j: int) -> tuple[int, Diagram]:
    """Join the last ``j`` points of ``d1`` to the first ``j`` points of ``d2``,
    innermost first.  Returns ``(loops, diagram)``."""
    if not 0 <= j <= min(len(d1.partner), len(d2.partner)):
        raise ValueError(f"stitch width {j} out of range for grades {d1.n}, {d2.n}")
    return _stitch_cached(d1, d2, j)


def cap(d: Diagram, side: str) -> tuple[int, Diagram]:
    """Join the two leftmost (``side="left"``) or two rightmost points.

    Returns ``(loops, diagram)`` with ``loops`` in ``{0, 1}``.
    """
    p = d.partner
    m = len(p)
    if m == 0:
        raise ValueError("cannot cap a grade-0 diagram")
    if side == "left":
        a, b = 0, 1
    elif side == "right":
        a, b = m - 2, m - 1
    else:
        raise ValueError(f"side must be 'left' or 'right', not {side!r}")
    q = list(p)
    loops = 0
    if p[a] == b:
        loops = 1
    else:
        x, y = p[a], p[b]
        q[x], q[y] = y, x
    keep = [i for i in range(m) if i != a and i != b]
    index = {old: new for new, old in enumerate(keep)}
    return loops, from_partner(tuple(index[q[i]] for i in keep), check=False)


def close_pairing(d1: Diagram, d2: Diagram) -> int:
    """Loops formed by gluing ``d1`` to the reflection of ``d2``: point ``i`` of
    ``d1`` meets point ``i`` of ``d2``."""
    a, b = d1.partner, d2.partner
    if len(a) != len(b):
        raise ValueError(f"grade mismatch: {d1.n} != {d2.n}")
    return _close(a, b)


def _close(a, b) -> int:
    seen = bytearray(len(a))
    loops = 0
    for s in range(len(a)):
        if seen[s]:
            continue
        loops += 1
        p = s
        while True:
            seen[p] = 1
            p = a[p]
            seen[p] = 1
            p = b[p]
            if p == s:
                break
    return loops


def reflect(d: Diagram) -> Diagram:
    """Mirror image: point ``i`` goes to ``2n-1-i``."""
    p = d.partner
    m = len(p) - 1
    return from_partner(tuple(m - p[m - i] for i in range(len(p))), check=False)


def cup_diagram() -> Diagram:
    return from_string("()")


def cup_power_diagram(k: int) -> Diagram:
    return from_string("()" * k)


class PlanarBackend:
    """The diagram operations the graded algebra needs.  Other planar algebras can
    plug in by providing the same methods; only Temperley-Lieb ships."""

    def basis(self, n: int) -> list:
        raise NotImplementedError

    def stitch(self, d1, d2, j: int):
        raise NotImplementedError

    def concat(self, d1, d2):
        raise NotImplementedError

    def close(self, d1, d2) -> int:
        raise NotImplementedError

    def reflect(self, d):
        raise NotImplementedError

    def cap(self, d, side: str):
        raise NotImplementedError


class TemperleyLieb(PlanarBackend):
    def basis(self, n):
        return enumerate_diagrams(n)

    def stitch(self, d1, d2, j):
        return stitch(d1, d2, j)

    def concat(self, d1, d2):
        return concat_diagrams(d1, d2)

    def close(self, d1, d2):
        return close_pairing(d1, d2)

    def reflect(self, d):
        return reflect(d)

    def cap(self, d, side):
        return cap(d, side)
