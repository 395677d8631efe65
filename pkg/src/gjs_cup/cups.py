"""The cup subalgebra and the cup-padding decomposition of the truncated space.

Every element of P_n splits uniquely as a multiple of the cup power plus terms
``cup^l . v . cup^r`` with ``v`` in V_m (killed by the left and by the right
cap) and ``l + m + r = n``.  The labeled basis

* ``CupLabel(k)``: ``q**-k * cup^k``
* ``MidLabel(l, m, i, r)``: ``q**-(l+r) * cup^l . v_{m,i} . cup^r``

is orthogonal; cup vectors have norm 1 and the middle ones carry the squared
norm of ``v_{m,i}`` (the V_m bases are orthogonal but not normalized, to stay
inside Q(q)).

Coordinates are found by peeling: ``x = cup . y + x0`` with
``y = capL(x) / delta`` and ``capL(x0) = 0``, then the same on the right of
``x0``.  What survives both peels lies in V_n.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from typing import NamedTuple

from .algebra import (
    GradedElement,
    OperatorMatrix,
    bullet,
    cap_element,
    inner,
    multiply,
)
from .diagrams import catalan, enumerate_diagrams
from .linalg import ldl, rank
from .reports import Report
from .scalar import ONE, Q, ZERO, Scalar, primitive_multiplier

__all__ = [
    "CupLabel",
    "MidLabel",
    "VSpace",
    "ThetaBasis",
    "cup_power",
    "compute_Vn",
    "vspace",
    "is_irreducible",
    "kills_both_caps",
    "vn_dimension_by_rank",
    "dimension_identity",
    "theta_blocks",
    "theta_coords",
    "theta_coords_by_inner",
    "reconstruct",
    "from_blocks",
    "measure_action",
    "check_cup_action",
    "qj_projector",
    "qj_apply",
    "membership",
    "save_vn_cache",
    "load_vn_cache",
]

ENGINE_VERSION = "gjs-cup/1"

_CUP = GradedElement.cup()
_QINV = ONE / Q


class CupLabel(NamedTuple):
    k: int

    @property
    def grade(self) -> int:
        return self.k

    def __str__(self):
        return f"cup{self.k}"


class MidLabel(NamedTuple):
    l: int
    m: int
    i: int
    r: int

    @property
    def grade(self) -> int:
        return self.l + self.m + self.r

    def __str__(self):
        return f"({self.l},{self.m},{self.i},{self.r})"


def _label_key(label):
    if isinstance(label, CupLabel):
        return (label.grade, 0, label.k, 0, 0, 0)
    return (label.grade, 1) + tuple(label)


def cup_power(k: int) -> GradedElement:
    """``cup^k`` side by side; zero for negative ``k`` and 1 for ``k = 0``."""
    if k < 0:
        return GradedElement.zero()
    return GradedElement.diagram("()" * k)


def _lcup(x: GradedElement, k: int = 1) -> GradedElement:
    return bullet(cup_power(k), x) if k else x


def _rcup(x: GradedElement, k: int = 1) -> GradedElement:
    return bullet(x, cup_power(k)) if k else x


def _over_delta(x: GradedElement) -> GradedElement:
    return x.map_coefficients(lambda c: c.shifted(-2))


def kills_both_caps(x: GradedElement) -> bool:
    """True iff ``x`` is homogeneous of grade >= 1 and both caps annihilate it."""
    if x.is_zero():
        return True
    grades = x.grades()
    if len(grades) != 1 or min(grades) < 1:
        return False
    return cap_element(x, "left").is_zero() and cap_element(x, "right").is_zero()


def is_irreducible(d) -> bool:
    """No cup at the far left or the far right of the diagram."""
    p = d.partner
    return len(p) >= 2 and p[0] != 1 and p[-1] != len(p) - 2


def _v_projection(x: GradedElement) -> GradedElement:
    """Orthogonal projection of a homogeneous element of grade >= 2 onto V_n."""
    x = x - _lcup(_over_delta(cap_element(x, "left")))
    return x - _rcup(_over_delta(cap_element(x, "right")))


@dataclass
class VSpace:
    """An orthogonal basis of V_m.

    ``pivots`` are the irreducible diagrams in canonical order; ``spanning[j]``
    is the projection of ``pivots[j]`` onto V_m (coefficient 1 at its pivot and 0
    at every other irreducible diagram).  ``vectors[k] = scales[k] * sum_j
    Linv[k][j] spanning[j]`` where ``G = L D L^T`` is the Gram matrix of the
    spanning family.
    """

    m: int
    pivots: list
    spanning: list
    lower: list
    scales: list
    vectors: list
    norms: list

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def coordinates(self, w: GradedElement, check: bool = True) -> list[Scalar]:
        """Coordinates of ``w`` in ``V_m`` with respect to :attr:`vectors`."""
        if check and not kills_both_caps(w):
            raise ValueError("element is not in V_m")
        if check and w.terms and w.max_grade() != self.m:
            raise ValueError(f"element has grade {w.max_grade()}, expected {self.m}")
        a = [w.coefficient(d) for d in self.pivots]
        out = []
        for k in range(self.dim):
            s = ZERO
            for j in range(k, self.dim):
                if a[j] and self.lower[j][k]:
                    s = s + a[j] * self.lower[j][k]
            out.append(s / self.scales[k])
        return out


def _build_vspace(m: int) -> VSpace:
    if m < 1:
        raise ValueError("V_m is defined for m >= 1")
    pivots = [d for d in enumerate_diagrams(m) if is_irreducible(d)]
    spanning = [_v_projection(GradedElement.diagram(d)) for d in pivots]
    n = len(spanning)
    G = [[ZERO] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1):
            G[i][j] = G[j][i] = inner(spanning[i], spanning[j])
    L, D = ldl(G, ZERO, ONE)
    # rows of L^{-1} by forward substitution
    Linv = []
    for k in range(n):
        row = [ZERO] * n
        row[k] = ONE
        for j in range(k - 1, -1, -1):
            s = ZERO
            for t in range(j + 1, k + 1):
                if row[t] and L[t][j]:
                    s = s - row[t] * L[t][j]
            row[j] = s
        Linv.append(row)
    vectors, scales, norms = [], [], []
    for k in range(n):
        u = GradedElement.zero()
        for j in range(k + 1):
            if Linv[k][j]:
                u = u + spanning[j].scale(Linv[k][j])
        s = primitive_multiplier([c for _, c in u.sorted_terms()])
        vectors.append(u.scale(s))
        scales.append(s)
        norms.append(s * s * D[k])
    return VSpace(m, pivots, spanning, L, scales, vectors, norms)


_vspaces: dict[int, VSpace] = {}


def vspace(m: int) -> VSpace:
    """The (cached) orthogonal basis of V_m."""
    vs = _vspaces.get(m)
    if vs is None:
        vs = _vspaces[m] = _build_vspace(m)
    return vs


def compute_Vn(n: int) -> list[GradedElement]:
    """Orthogonal (not normalized) basis of V_n."""
    return list(vspace(n).vectors)


def vn_dimension_by_rank(n: int) -> int:
    """dim V_n as the nullity of the stacked left/right cap matrix over Q(q).

    Independent of :func:`vspace`: a plain rank computation.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    cols = enumerate_diagrams(n)
    rows = enumerate_diagrams(n - 1)
    index = {d: i for i, d in enumerate(rows)}
    h = len(rows)
    M = [[ZERO] * len(cols) for _ in range(2 * h)]
    for j, d in enumerate(cols):
        for block, side in ((0, "left"), (h, "right")):
            img = cap_element(GradedElement.diagram(d), side)
            for e, c in img.terms.items():
                M[block + index[e]][j] = c
    return len(cols) - rank(M)


def dimension_identity(n: int, dims: dict[int, int] | None = None) -> Report:
    """Check ``Catalan(n) = 1 + sum_{m=1..n} (n-m+1) dim V_m``."""
    if dims is None:
        dims = {m: vspace(m).dim for m in range(1, n + 1)}
    rhs = 1 + sum((n - m + 1) * dims[m] for m in range(1, n + 1))
    lhs = catalan(n)
    return Report(
        "dimension-identity",
        {"n": n},
        lhs == rhs,
        {"lhs": lhs, "rhs": rhs, "dims": [dims[m] for m in range(1, n + 1)]},
    )


# -- the labeled basis --------------------------------------------------------


class ThetaBasis:
    """Labeled orthogonal basis of grades ``0..level``.  V_m bases are built on
    first use and shared between instances."""

    def __init__(self, level: int):
        if level < 0:
            raise ValueError("level must be non-negative")
        self.level = level

    @property
    def cup_part(self) -> list[CupLabel]:
        return [CupLabel(k) for k in range(self.level + 1)]

    @property
    def middle_part(self) -> list[MidLabel]:
        out = []
        for m in range(2, self.level + 1):
            dim = vspace(m).dim
            for l in range(self.level - m + 1):
                for r in range(self.level - m - l + 1):
                    out.extend(MidLabel(l, m, i, r) for i in range(dim))
        return sorted(out, key=_label_key)

    def labels(self) -> list:
        return sorted(self.cup_part + self.middle_part, key=_label_key)

    def vbasis(self, m: int) -> list[GradedElement]:
        return vspace(m).vectors

    def vnorm(self, m: int, i: int) -> Scalar:
        return vspace(m).norms[i]

    def weight(self, label) -> Scalar:
        """Squared norm of the basis vector at ``label``."""
        if isinstance(label, CupLabel):
            return ONE
        return self.vnorm(label.m, label.i)

    def vector(self, label) -> GradedElement:
        if isinstance(label, CupLabel):
            return cup_power(label.k).scale(Q ** -label.k)
        v = vspace(label.m).vectors[label.i]
        return _rcup(_lcup(v, label.l), label.r).scale(Q ** -(label.l + label.r))


def theta_blocks(x: GradedElement) -> dict:
    """Split ``x`` into its cup part and its ``(l, r)`` middle blocks.

    Returns ``{CupLabel(k): coordinate, (l, r): w}`` where ``w`` lies in V_m and
    the component of ``x`` is ``q**-(l+r) * cup^l . w . cup^r``.  Needs no V_m
    basis.
    """
    out: dict = {}
    for n in sorted(x.grades()):
        _peel(x.homogeneous_part(n), n, out)
    return out


def _peel(x: GradedElement, n: int, out: dict) -> None:
    l = 0
    while not x.is_zero():
        if n == 0:
            out[CupLabel(l)] = x.coefficient("").shifted(l)
            return
        y = _over_delta(cap_element(x, "left"))
        x0 = x - _lcup(y)
        r, w, k = 0, x0, n
        while not w.is_zero():
            if k <= 1:
                raise ArithmeticError("peeling left a nonzero remainder in grade <= 1")
            z = _over_delta(cap_element(w, "right"))
            core = w - _rcup(z)
            if not core.is_zero():
                if not kills_both_caps(core):
                    raise ArithmeticError("peeled remainder is not killed by both caps")
                out[(l, r)] = core.map_coefficients(lambda c, s=l + r: c.shifted(s))
            w, k, r = z, k - 1, r + 1
        x, n, l = y, n - 1, l + 1


def from_blocks(blocks: dict) -> GradedElement:
    """Inverse of :func:`theta_blocks`."""
    out = GradedElement.zero()
    for key, val in blocks.items():
        if isinstance(key, CupLabel):
            out = out + cup_power(key.k).scale(val.shifted(-key.k))
        else:
            l, r = key
            out = out + _rcup(_lcup(val, l), r).map_coefficients(lambda c: c.shifted(-(l + r)))
    return out


def theta_coords(x: GradedElement, basis: ThetaBasis) -> dict:
    """Coordinates ``{label: Scalar}`` of ``x``; zero coordinates are omitted."""
    if x.max_grade() > basis.level:
        raise ValueError(f"element has grade {x.max_grade()} above level {basis.level}")
    coords = {}
    for key, val in theta_blocks(x).items():
        if isinstance(key, CupLabel):
            coords[key] = val
            continue
        l, r = key
        m = val.max_grade()
        for i, c in enumerate(vspace(m).coordinates(val)):
            if c:
                coords[MidLabel(l, m, i, r)] = c
    return dict(sorted(coords.items(), key=lambda t: _label_key(t[0])))


def theta_coords_by_inner(x: GradedElement, basis: ThetaBasis) -> dict:
    """Reference coordinates ``<x, b> / <b, b>`` over every basis vector ``b``.
    Slow; an oracle for :func:`theta_coords`."""
    coords = {}
    grades = x.grades()
    for label in basis.labels():
        if label.grade not in grades:
            continue
        b = basis.vector(label)
        c = inner(x, b) / inner(b, b)
        if c:
            coords[label] = c
    return coords


def reconstruct(coords: dict, basis: ThetaBasis) -> GradedElement:
    out = GradedElement.zero()
    for label, c in coords.items():
        out = out + basis.vector(label).scale(c)
    return out


# -- the action of the cup ----------------------------------------------------


def measure_action(basis: ThetaBasis, side: str, labels=None) -> dict:
    """Columns of the matrix of left (``"left"``) or right multiplication by the
    cup in the labeled basis: ``{column label: {row label: Scalar}}``.

    Image components of grade above ``basis.level`` are dropped.
    """
    if labels is None:
        labels = basis.labels()
    cols = {}
    for label in labels:
        g = basis.vector(label)
        img = multiply(_CUP, g) if side == "left" else multiply(g, _CUP)
        cols[label] = theta_coords(img.truncate(basis.level), basis)
    return cols


def _expected_middle(label: MidLabel, side: str) -> dict:
    l, m, i, r = label
    out = {label: ONE}
    if side == "left":
        out[MidLabel(l + 1, m, i, r)] = Q
        if l:
            out[MidLabel(l - 1, m, i, r)] = Q
    else:
        out[MidLabel(l, m, i, r + 1)] = Q
        if r:
            out[MidLabel(l, m, i, r - 1)] = Q
    return out


def _expected_cup(k: int) -> dict:
    out = {CupLabel(k + 1): Q, CupLabel(k): ONE}
    if k:
        out[CupLabel(k - 1)] = Q
    return out


def _commutator_columns(left: dict, right: dict, labels) -> list:
    """Labels whose column of ``L R - R L`` is nonzero."""

    def apply(cols, vec):
        out: dict = {}
        for lab, c in vec.items():
            for row, v in cols[lab].items():
                out[row] = out.get(row, ZERO) + c * v
        return {k: v for k, v in out.items() if v}

    bad = []
    for label in labels:
        lr = apply(left, right[label])
        rl = apply(right, left[label])
        diff = {k: lr.get(k, ZERO) - rl.get(k, ZERO) for k in set(lr) | set(rl)}
        if any(diff.values()):
            bad.append(label)
    return bad


def check_cup_action(N: int) -> Report:
    """Measure left and right multiplication by the cup in the labeled basis at
    level ``N`` and compare with the shift-operator block structure.

    Interior columns are those of grade ``<= N - 1`` (their images are exact);
    the commutator is checked on grades ``<= N - 2``.
    """
    if N < 3:
        raise ValueError("check_cup_action needs level >= 3")
    basis = ThetaBasis(N)
    labels = basis.labels()
    actions = {side: measure_action(basis, side, labels) for side in ("left", "right")}
    witnesses = []
    for side, cols in actions.items():
        for label, col in cols.items():
            for row in col:
                if type(row) is not type(label):
                    witnesses.append({"side": side, "kind": "off-block", "col": str(label),
                                      "row": str(row)})
            if label.grade > N - 1:
                continue
            if isinstance(label, MidLabel):
                if col != _expected_middle(label, side):
                    witnesses.append({"side": side, "kind": "middle", "col": str(label)})
            elif label.k >= 1:
                if col != _expected_cup(label.k):
                    witnesses.append({"side": side, "kind": "cup", "col": str(label)})
            else:
                rest = {k: v for k, v in col.items() if k != CupLabel(0)}
                if rest != {CupLabel(1): Q}:
                    witnesses.append({"side": side, "kind": "cup", "col": str(label)})
    inner_labels = [lab for lab in labels if lab.grade <= N - 2]
    for lab in _commutator_columns(actions["left"], actions["right"], inner_labels):
        witnesses.append({"kind": "commutator", "col": str(lab)})
    measured = {side: actions[side][CupLabel(0)].get(CupLabel(0), ZERO) for side in actions}
    # cup block of pi((cup - 1)/q) is S + S* - c q_{e0}; c = (1 - m00)/q
    qe0 = {side: (ONE - v) * _QINV for side, v in measured.items()}
    return Report(
        "theta-check",
        {"level": N},
        not witnesses,
        {
            "labels": len(labels),
            "cup_block_00": measured,
            "qe0_coefficient": qe0,
            "witnesses": witnesses,
        },
    )


def cup_block(N: int, side: str = "left") -> list[list[Scalar]]:
    """Measured cup-to-cup block of multiplication by the cup at level ``N``,
    as an ``(N+1) x (N+1)`` matrix; checks that no middle component appears."""
    out = [[ZERO] * (N + 1) for _ in range(N + 1)]
    for k in range(N + 1):
        f = cup_power(k).scale(Q ** -k)
        img = multiply(_CUP, f) if side == "left" else multiply(f, _CUP)
        for key, val in theta_blocks(img.truncate(N)).items():
            if not isinstance(key, CupLabel):
                raise ArithmeticError(f"cup image has a middle component at {key}")
            out[key.k][k] = val
    return out


# -- Q_J and the subspaces Y_L, Z_L --------------------------------------------


def qj_projector(J: int, basis: ThetaBasis) -> OperatorMatrix:
    """Diagonal matrix, in the labeled basis, of the orthogonal projection onto
    the span of middle labels with ``l <= J-1`` or ``r <= J-1``."""
    if J < 1:
        raise ValueError("J must be >= 1")
    labels = basis.labels()
    n = len(labels)
    entries = [[ZERO] * n for _ in range(n)]
    for i, lab in enumerate(labels):
        if isinstance(lab, MidLabel) and (lab.l < J or lab.r < J):
            entries[i][i] = ONE
    return OperatorMatrix(labels, entries, basis.level, labels)


def qj_apply(x: GradedElement, J: int) -> GradedElement:
    blocks = theta_blocks(x)
    keep = {k: v for k, v in blocks.items()
            if not isinstance(k, CupLabel) and (k[0] < J or k[1] < J)}
    return from_blocks(keep)


def membership(x: GradedElement, which: str, L: int) -> bool:
    """Whether ``x`` lies in ``Y_L`` (``l, r <= L``) or ``Z_L`` (``l`` or
    ``r <= L``).  A nonzero cup component excludes both."""
    if which not in ("Y", "Z"):
        raise ValueError("which must be 'Y' or 'Z'")
    for key in theta_blocks(x):
        if isinstance(key, CupLabel):
            return False
        l, r = key
        if which == "Y" and not (l <= L and r <= L):
            return False
        if which == "Z" and not (l <= L or r <= L):
            return False
    return True


# -- disk cache ---------------------------------------------------------------


def save_vn_cache(path: str, ms) -> None:
    """Write the V_m bases for ``ms`` to ``path`` (JSON, keyed by engine version)."""
    data = {"engine_version": ENGINE_VERSION, "entries": {}}
    if os.path.exists(path):
        try:
            with open(path) as fh:
                old = json.load(fh)
            if old.get("engine_version") == ENGINE_VERSION:
                data["entries"].update(old.get("entries", {}))
        except (OSError, ValueError):
            pass
    for m in ms:
        vs = vspace(m)
        data["entries"][str(m)] = {
            "pivots": [d.string for d in vs.pivots],
            "lower": [[c.to_json() for c in row[: i + 1]] for i, row in enumerate(vs.lower)],
            "scales": [s.to_json() for s in vs.scales],
            "vectors": [v.to_json() for v in vs.vectors],
            "norms": [s.to_json() for s in vs.norms],
        }
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    tmp = path + ".tmp"
    with open(tmp, "w") as fh:
        json.dump(data, fh, sort_keys=True)
    os.replace(tmp, path)


def load_vn_cache(path: str) -> list[int]:
    """Install cached V_m bases from ``path``; returns the grades loaded.  A cache
    written by another engine version is ignored."""
    from .diagrams import from_string

    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, ValueError):
        return []
    if data.get("engine_version") != ENGINE_VERSION:
        return []
    loaded = []
    for key, e in data.get("entries", {}).items():
        m = int(key)
        if m in _vspaces:
            continue
        n = len(e["pivots"])
        lower = [[ZERO] * n for _ in range(n)]
        for i, row in enumerate(e["lower"]):
            for j, c in enumerate(row):
                lower[i][j] = Scalar.from_json(c)
        pivots = [from_string(s) for s in e["pivots"]]
        _vspaces[m] = VSpace(
            m,
            pivots,
            [_v_projection(GradedElement.diagram(d)) for d in pivots],
            lower,
            [Scalar.from_json(s) for s in e["scales"]],
            [GradedElement.from_json(v) for v in e["vectors"]],
            [Scalar.from_json(s) for s in e["norms"]],
        )
        loaded.append(m)
    return sorted(loaded)
