"""Independent reference implementations used as test oracles.

Nothing here imports the engine's planar operations: stitching and closing are
done by walking an explicit point graph, and elements are evaluated at a
rational q with plain ``Fraction`` arithmetic.
"""

from __future__ import annotations

import json
import os
import random
from fractions import Fraction
from itertools import combinations


def pairs_of(s: str) -> list[tuple[int, int]]:
    """0-based pairs from a balanced-parenthesis string."""
    stack, out = [], []
    for i, ch in enumerate(s):
        if ch == "(":
            stack.append(i)
        else:
            out.append((stack.pop(), i))
    return sorted(out)


def string_of(pairs, size: int) -> str:
    chars = [""] * size
    for a, b in pairs:
        a, b = min(a, b), max(a, b)
        chars[a], chars[b] = "(", ")"
    return "".join(chars)


def _walk(edges: dict, free: list) -> tuple[int, list[tuple]]:
    """Trace a graph where every vertex has degree 1 or 2.  Returns the number of
    closed cycles and the pairs of free vertices joined by paths."""
    seen, joined = set(), []
    for start in free:
        if start in seen:
            continue
        prev, cur = None, start
        seen.add(cur)
        while True:
            nxt = [v for v in edges[cur] if v != prev or edges[cur].count(v) > 1]
            nxt = [v for v in nxt if v not in seen]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            seen.add(cur)
        joined.append((start, cur))
    cycles = 0
    for v in edges:
        if v in seen:
            continue
        cycles += 1
        stack = [v]
        while stack:
            u = stack.pop()
            if u in seen:
                continue
            seen.add(u)
            stack.extend(w for w in edges[u] if w not in seen)
    return cycles, joined


def stitch_oracle(s1: str, s2: str, j: int) -> tuple[int, str]:
    """Join the last ``j`` points of ``s1`` to the first ``j`` of ``s2``
    (innermost first) and report (closed loops, resulting diagram string)."""
    n1, n2 = len(s1), len(s2)
    edges: dict = {("a", p): [] for p in range(n1)}
    edges.update({("b", p): [] for p in range(n2)})
    for a, b in pairs_of(s1):
        edges[("a", a)].append(("a", b))
        edges[("a", b)].append(("a", a))
    for a, b in pairs_of(s2):
        edges[("b", a)].append(("b", b))
        edges[("b", b)].append(("b", a))
    for t in range(j):
        x, y = ("a", n1 - 1 - t), ("b", t)
        edges[x].append(y)
        edges[y].append(x)
    free = [("a", p) for p in range(n1 - j)] + [("b", p) for p in range(j, n2)]
    pos = {v: i for i, v in enumerate(free)}
    loops, joined = _walk(edges, free)
    return loops, string_of([(pos[a], pos[b]) for a, b in joined], len(free))


def close_oracle(s1: str, s2: str) -> int:
    """Loops of the union of the two matchings on the same point set."""
    edges = {p: [] for p in range(len(s1))}
    for a, b in pairs_of(s1) + pairs_of(s2):
        edges[a].append(b)
        edges[b].append(a)
    loops, _ = _walk(edges, [])
    return loops


def noncrossing_strings(n: int) -> list[str]:
    """All non-crossing perfect matchings of 2n points by brute force, as strings."""
    pts = list(range(2 * n))

    def matchings(rest):
        if not rest:
            yield []
            return
        a = rest[0]
        for b in rest[1:]:
            rem = [x for x in rest if x not in (a, b)]
            for m in matchings(rem):
                yield [(a, b)] + m

    out = []
    for m in matchings(pts):
        if not any(a < c < b < d for (a, b), (c, d) in combinations(sorted(m), 2)) and \
           not any(c < a < d < b for (a, b), (c, d) in combinations(sorted(m), 2)):
            out.append(string_of(m, 2 * n))
    return sorted(out)


# -- elements as {string: Fraction} at a fixed rational q --------------------------


def multiply_at(a: dict, b: dict, delta: Fraction) -> dict:
    out: dict = {}
    for s1, c1 in a.items():
        for s2, c2 in b.items():
            for j in range(min(len(s1), len(s2)) + 1):
                loops, s = stitch_oracle(s1, s2, j)
                out[s] = out.get(s, 0) + c1 * c2 * delta ** loops
    return {k: v for k, v in out.items() if v}


def inner_at(a: dict, b: dict, delta: Fraction) -> Fraction:
    total = Fraction(0)
    for s1, c1 in a.items():
        for s2, c2 in b.items():
            if len(s1) == len(s2):
                total += c1 * c2 * delta ** close_oracle(s1, s2)
    return total


def element_at(x, q0) -> dict:
    """Evaluate an engine element coefficientwise at ``q = q0``."""
    out = {d.string: c.evaluate(q0) for d, c in x.terms.items()}
    return {k: v for k, v in out.items() if v}


# -- golden files -------------------------------------------------------------------


GOLDEN = os.path.join(os.path.dirname(__file__), "golden")


def freeze_or_compare(name: str, data) -> tuple[bool, object]:
    """Write ``data`` to the golden file on first run; afterwards return the
    frozen value for comparison.  Returns ``(written, frozen)``."""
    path = os.path.join(GOLDEN, name)
    if not os.path.exists(path):
        os.makedirs(GOLDEN, exist_ok=True)
        with open(path, "w") as fh:
            json.dump(data, fh, sort_keys=True, indent=1)
            fh.write("\n")
        return True, data
    with open(path) as fh:
        return False, json.load(fh)


def random_element(rng: random.Random, max_grade: int, terms: int = 3):
    """A random element with small Laurent coefficients (engine type)."""
    from gjs_cup import GradedElement, Scalar, enumerate_diagrams

    out = {}
    for _ in range(terms):
        n = rng.randint(0, max_grade)
        d = rng.choice(enumerate_diagrams(n))
        c = Scalar.laurent({rng.randint(-2, 2): rng.randint(-3, 3), rng.randint(-2, 2): rng.randint(-3, 3)})
        out[d] = out.get(d, Scalar(0)) + c
    return GradedElement(out)
