"""Finite checks of the orthogonality argument built on cup padding.

Four pieces:

* closure of V under ``v . cup^n . w``;
* the expansion of ``(cup^i . v . cup^j)(cup^k . w . cup^r)`` over the terms
  ``cup^i . (v . cup^n . w) . cup^r``, with the measured coefficients frozen in a
  golden file;
* ``<z b, b z> = 0`` for ``z`` padded by at least ``J`` cups on both sides and
  ``b`` padded by fewer than ``J`` on both sides;
* an inequality chain bounding ``||(q_{e_0} (x) 1) xi||`` on the double space
  ``C^N (x) C^N`` from the polynomials ``P_i``.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .algebra import GradedElement, bullet, inner, multiply
from .cups import CupLabel, cup_power, kills_both_caps, theta_blocks, vspace
from .reports import Report, jsonable
from .scalar import DELTA, ONE, ZERO, Scalar
from .shift import ShiftTruncation, chebyshev, poly_of_matrix, r_function_min

__all__ = [
    "ExpansionReport",
    "bullet_closure_check",
    "expansion_check",
    "expansion_family",
    "golden_compare",
    "orthogonality_check",
    "orthogonality_family",
    "pythagoras_certificate",
    "random_unit_vector",
    "sample_certificate_vector",
    "certificate_defects",
]


def _require_v(x: GradedElement, name: str) -> None:
    if x.is_zero() or not kills_both_caps(x):
        raise ValueError(f"{name} is not a nonzero element of V")


def _pad(v: GradedElement, left: int, right: int) -> GradedElement:
    return bullet(bullet(cup_power(left), v), cup_power(right))


def bullet_closure_check(v: GradedElement, n: int, w: GradedElement) -> bool:
    """True iff both caps kill ``v . cup^n . w``."""
    _require_v(v, "v")
    _require_v(w, "w")
    return kills_both_caps(bullet(bullet(v, cup_power(n)), w))


# -- the product expansion -----------------------------------------------------


@dataclass
class ExpansionReport:
    i: int
    j: int
    k: int
    r: int
    v_id: tuple
    w_id: tuple
    terms: list = field(default_factory=list)  # [(n, Scalar)] over the predicted range
    residual: GradedElement = field(default_factory=GradedElement.zero)
    template_match: bool = False
    endpoints_ok: bool = False
    support_ok: bool = False
    endpoint_detail: dict = field(default_factory=dict)

    @property
    def key(self) -> str:
        return ",".join(str(x) for x in (self.i, self.j, self.k, self.r, self.v_id[0], self.w_id[0]))

    def coefficient(self, n: int) -> Scalar:
        return dict(self.terms).get(n, ZERO)

    def to_report(self) -> Report:
        # the span and support claims are only made for j > k
        passed = self.endpoints_ok and (self.j <= self.k or (self.support_ok and self.template_match))
        return Report(
            "aop-expansion",
            {"i": self.i, "j": self.j, "k": self.k, "r": self.r,
             "v": list(self.v_id), "w": list(self.w_id)},
            passed,
            {
                "terms": [{"n": n, "c": c} for n, c in self.terms],
                "template_match": self.template_match,
                "endpoints_ok": self.endpoints_ok,
                "endpoints": self.endpoint_detail,
                "support_ok": self.support_ok,
                "residual": self.residual,
            },
        )


def expansion_check(i: int, j: int, k: int, r: int, v: GradedElement, w: GradedElement,
                    v_id=None, w_id=None) -> ExpansionReport:
    """Expand ``(cup^i . v . cup^j)(cup^k . w . cup^r)`` by brute force and
    decompose it over ``cup^i . (v . cup^n . w) . cup^r``, ``j-k-1 <= n <= j+k``.

    Each template is homogeneous and the templates sit in distinct grades, so the
    coefficient of ``n`` is read off from one diagram and checked on the whole
    grade.  With ``j > k`` nothing may be left over; otherwise the leftover is
    reported (strands then reach ``w`` itself).
    """
    _require_v(v, "v")
    _require_v(w, "w")
    mv, mw = v.max_grade(), w.max_grade()
    rep = ExpansionReport(i, j, k, r, v_id or (mv, 0), w_id or (mw, 0))
    prod = multiply(_pad(v, i, j), _pad(w, k, r))
    residual = prod
    for n in range(max(j - k - 1, 0), j + k + 1):
        middle = bullet(bullet(v, cup_power(n)), w)
        if not kills_both_caps(middle):
            raise ArithmeticError(f"v . cup^{n} . w is not in V")
        t = _pad(middle, i, r)
        part = prod.homogeneous_part(i + mv + n + mw + r)
        d, tc = t.sorted_terms()[0]
        c = part.coefficient(d) / tc
        if part != t.scale(c):
            continue  # not proportional: stays in the residual
        if c:
            rep.terms.append((n, c))
            residual = residual - t.scale(c)
    rep.residual = residual
    rep.template_match = residual.is_zero()
    if not rep.template_match and j > k:
        raise ArithmeticError(
            f"product for (i,j,k,r)=({i},{j},{k},{r}) is not spanned by the padded terms"
        )
    checks = {str(j + k): (rep.coefficient(j + k), ONE)}
    for n in (j - k, j - k - 1):
        if n >= 0:
            checks[str(n)] = (rep.coefficient(n), DELTA ** k)
    rep.endpoint_detail = {n: {"measured": a, "expected": b} for n, (a, b) in checks.items()}
    rep.endpoints_ok = all(a == b for a, b in checks.values())
    rep.support_ok = all(
        not isinstance(key, CupLabel) and key[0] >= i and key[1] == r
        for key in theta_blocks(prod)
    )
    return rep


def expansion_family(ijs=(1, 2), krs=(0, 1), ms=(2, 3)) -> list[ExpansionReport]:
    """Expansions over ``i, j`` in ``ijs``, ``k, r`` in ``krs`` and the first basis
    vector of each ``V_m`` for ``m`` in ``ms``."""
    out = []
    for i in ijs:
        for j in ijs:
            for k in krs:
                for r in krs:
                    for mv in ms:
                        for mw in ms:
                            v, w = vspace(mv).vectors[0], vspace(mw).vectors[0]
                            out.append(expansion_check(i, j, k, r, v, w, (mv, 0), (mw, 0)))
    return out


def golden_compare(reports: list[ExpansionReport], path: str) -> tuple[bool, list[str]]:
    """Freeze the measured coefficients into ``path`` if it does not exist,
    otherwise compare against it.  Returns ``(written, mismatched keys)``."""
    current = {
        rep.key: [[n, jsonable(c)] for n, c in rep.terms] for rep in reports
    }
    if not os.path.exists(path):
        os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
        with open(path, "w") as fh:
            json.dump(current, fh, sort_keys=True, indent=1)
            fh.write("\n")
        return True, []
    with open(path) as fh:
        frozen = json.load(fh)
    bad = sorted(key for key, val in current.items() if key in frozen and frozen[key] != val)
    return False, bad


# -- orthogonality ---------------------------------------------------------------


def orthogonality_check(z: GradedElement, b: GradedElement, J: int) -> Scalar:
    """``<z b, b z>`` where every block of ``z`` has at least ``J`` cups on each
    side and every block of ``b`` fewer than ``J`` on each side."""
    if J < 1:
        raise ValueError("J must be >= 1")
    for key in theta_blocks(z):
        if isinstance(key, CupLabel) or key[0] < J or key[1] < J:
            raise ValueError(f"z has a component {key} outside the hypothesis for J={J}")
    for key in theta_blocks(b):
        if isinstance(key, CupLabel) or key[0] > J - 1 or key[1] > J - 1:
            raise ValueError(f"b has a component {key} outside the hypothesis for J={J}")
    return inner(multiply(z, b), multiply(b, z))


def orthogonality_family(ijs=(1, 2), krs=(0, 1), ms=(2, 3)) -> Report:
    """``<z b, b z>`` for ``z = cup^i . v . cup^j``, ``b = cup^k . w . cup^r``
    with ``J = max(k, r) + 1 <= min(i, j)``, over all V basis vectors of the
    given grades."""
    vecs = [(m, idx, v) for m in ms for idx, v in enumerate(vspace(m).vectors)]
    rows, nonzero = [], []
    for i in ijs:
        for j in ijs:
            for k in krs:
                for r in krs:
                    J = max(k, r) + 1
                    if min(i, j) < J:
                        continue
                    for mv, iv, v in vecs:
                        for mw, iw, w in vecs:
                            val = orthogonality_check(_pad(v, i, j), _pad(w, k, r), J)
                            rows.append({"i": i, "j": j, "k": k, "r": r, "J": J,
                                         "v": [mv, iv], "w": [mw, iw], "value": val})
                            if val:
                                nonzero.append(rows[-1])
    return Report(
        "aop-orth",
        {"ijs": list(ijs), "krs": list(krs), "ms": list(ms)},
        not nonzero and bool(rows),
        {"cases": len(rows), "nonzero": nonzero, "values": rows},
    )


# -- the inequality chain -------------------------------------------------------


def random_unit_vector(rng, N: int, rows, exact: bool = True, damp_rows=(), damp: int = 1):
    """A unit vector on ``C^N (x) C^N`` as an ``N x N`` array, supported on the
    given first-factor ``rows``.

    Exactness comes from inverse stereographic projection: for rational ``u``,
    ``(2u, |u|^2 - 1) / (|u|^2 + 1)`` has norm exactly 1.  Entries of ``u`` in
    ``damp_rows`` are divided by ``damp``.
    """
    rows = list(rows)
    damp_rows = set(damp_rows)
    positions = [(a, b) for a in rows for b in range(N)]
    last = positions.pop()  # receives the (|u|^2 - 1) coordinate
    u = []
    for a, _ in positions:
        den = int(rng.integers(1, 10)) * (damp if a in damp_rows else 1)
        u.append(Fraction(int(rng.integers(-9, 10)), den))
    s = sum(x * x for x in u)
    xi = np.empty((N, N), dtype=object)
    xi[...] = Fraction(0)
    for (a, b), x in zip(positions, u):
        xi[a, b] = 2 * x / (s + 1)
    xi[last] = (s - 1) / (s + 1)
    if not exact:
        xi = xi.astype(float)
    return xi


def sample_certificate_vector(rng, N: int, I: int, eps, max_tries: int = 1000):
    """An exact unit vector on rows ``1..N-1`` (rows up to ``I`` damped) whose
    defects are all at most ``eps``; rejection sampling."""
    eps = Fraction(eps)
    for _ in range(max_tries):
        xi = random_unit_vector(rng, N, range(1, N), damp_rows=range(1, I + 1), damp=8)
        if all(d <= eps * eps for d in certificate_defects(xi, I)):
            return xi
    raise RuntimeError("no vector met the defect bound")


def certificate_defects(xi, I: int) -> list:
    """Squared defects ``||((q_{e_0} (x) P_i(T)) - (v_i (x) 1)) xi||^2`` for ``i <= I``."""
    N = xi.shape[0]
    T = ShiftTruncation(N).T
    out = []
    for i in range(I + 1):
        # (A (x) B) xi = A xi B^T: v_i moves row i to row 0, q_{e_0} keeps row 0
        b_i = poly_of_matrix(chebyshev(i), T).dot(xi[0, :])
        out.append(_sq(b_i - xi[i, :]))
    return out


def _sq(x):
    return (x * x).sum() if x.size else 0


def pythagoras_certificate(xi, I: int, eps_defect, grid_size: int = 10_000,
                           exact: bool = True, tol: float = 1e-12) -> Report:
    """Evaluate each line of the chain for the vector ``xi`` (an ``N x N`` array,
    ``xi[a, b]`` the coefficient of ``e_a (x) e_b``).

    With ``a_i = (v_i (x) 1) xi`` and ``b_i = (q_{e_0} (x) P_i(T)) xi``:

    (a) ``1 >= sum_i ||(q_{e_i} (x) 1) xi||^2``
    (b) ``||(q_{e_i} (x) 1) xi|| = ||a_i||``
    (c) ``sum ||a_i||^2 >= sum ||b_i||^2 - (I+1)(eps^2 + 2 eps)``
    (d) ``sum ||b_i||^2 >= Rmin ||(q_{e_0} (x) 1) xi||^2``, Rmin the grid minimum
        of ``R_I``

    which together give ``||(q_{e_0} (x) 1) xi||^2 <= (1 + (I+1)(eps^2 + 2 eps)) / Rmin``.
    The certificate is conclusive when that bound is below 1.
    """
    xi = np.asarray(xi, dtype=object if exact else float)
    N = xi.shape[0]
    if xi.shape != (N, N):
        raise ValueError("xi must be a square N x N array")
    if I < 0 or I >= N:
        raise ValueError("need 0 <= I < N")
    if exact:
        xi = np.vectorize(Fraction, otypes=[object])(xi)
        eps = Fraction(eps_defect)
    else:
        eps = float(eps_defect)

    def geq(a, b):
        return a >= b if exact else a >= b - tol

    norm = _sq(xi)
    if (norm != 1) if exact else abs(norm - 1) > tol:
        raise ValueError(f"xi is not a unit vector (squared norm {norm})")
    if eps > Fraction(1, 4):
        raise ValueError("eps_defect must be <= 1/4")

    T = ShiftTruncation(N).T
    row0 = xi[0, :]
    a_sq, b_sq, qe_sq, defects = [], [], [], []
    for i in range(I + 1):
        Pi = poly_of_matrix(chebyshev(i), T)
        if not exact:
            Pi = Pi.astype(float)
        # (A (x) B) xi = A xi B^T
        a_i = xi[i, :]                      # v_i moves row i to row 0
        b_i = Pi.dot(row0)                  # row 0 of xi P_i(T)^T
        qe_sq.append(_sq(xi[i, :]))
        a_sq.append(_sq(a_i))
        b_sq.append(_sq(b_i))
        defects.append(_sq(b_i - a_i))
    for i, d in enumerate(defects):
        if not geq(eps * eps, d):
            raise ValueError(f"defect at i={i} exceeds eps_defect")

    slack = (I + 1) * (eps * eps + 2 * eps)
    rmin, argmin = r_function_min(I, grid_size)
    if not exact:
        rmin = float(rmin)
    x_sq = _sq(row0)
    line_a = geq(1, sum(qe_sq))
    line_b = all((p == s) if exact else abs(p - s) <= tol for p, s in zip(qe_sq, a_sq))
    line_c = geq(sum(a_sq), sum(b_sq) - slack)
    line_d = geq(sum(b_sq), rmin * x_sq)
    bound_sq = (1 + slack) / rmin
    conclusion = geq(bound_sq, x_sq)
    return Report(
        "certificate",
        {"N": N, "I": I, "eps_defect": eps, "grid_size": grid_size,
         "mode": "exact" if exact else "numeric"},
        line_a and line_b and line_c and line_d and conclusion,
        {
            "a": {"lhs": 1, "rhs": sum(qe_sq), "pass": line_a},
            "b": {"qe_norms_sq": qe_sq, "vi_norms_sq": a_sq, "pass": line_b},
            "c": {"lhs": sum(a_sq), "rhs": sum(b_sq) - slack, "slack": slack, "pass": line_c},
            "d": {"lhs": sum(b_sq), "rhs": rmin * x_sq, "r_grid_min": rmin,
                  "r_argmin": argmin, "pass": line_d},
            "defects_sq": defects,
            "x_sq": x_sq,
            "bound_sq": bound_sq,
            "conclusion_pass": conclusion,
            "conclusive": bool(bound_sq < 1),
            "two_over_rmin": (2 / rmin),
        },
    )
