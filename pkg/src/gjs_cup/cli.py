"""``gjs-cup``: command-line front end.

Every subcommand prints one report (JSON by default) and exits 0 when its checks
pass, 1 when a check fails and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

import numpy as np

from . import aop, cups, expr, shift
from .algebra import gram_at
from .diagrams import catalan, enumerate_diagrams
from .linalg import ldl
from .reports import Report, dumps, to_csv

DEFAULT_CACHE = os.path.join(os.path.expanduser("~"), ".cache", "gjs-cup")
CACHE_FILE = "vn-cache.json"


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated integer list: {text!r}")


def cache_path(args) -> str:
    root = args.cache_dir or os.environ.get("GJS_CACHE_DIR") or DEFAULT_CACHE
    return os.path.join(root, CACHE_FILE)


# -- subcommands -----------------------------------------------------------------


def cmd_dims(args) -> Report:
    max_n = args.max_n if args.max_grade is None else min(args.max_n, args.max_grade)
    rows, ok = [], True
    dims = {}
    for n in range(max_n + 1):
        count = len(enumerate_diagrams(n))
        dims[n] = cups.vspace(n).dim if n >= 1 else None
        ident = cups.dimension_identity(n, {m: d for m, d in dims.items() if m >= 1})
        ok &= count == catalan(n) and ident.passed
        rows.append({"n": n, "catalan": count, "dim_V": dims[n], "identity": ident.passed})
    return Report("dims", {"max_n": max_n}, ok, {"rows": rows})


def cmd_gram(args) -> Report:
    q0 = args.q0 if args.q0 is not None else Fraction(2)
    top = args.n if args.max_grade is None else min(args.n, args.max_grade)
    rows, ok = [], True
    for n in range(top + 1):
        _, pivots = ldl(gram_at(n, q0))
        pos = all(p > 0 for p in pivots)
        ok &= pos
        rows.append({"n": n, "size": len(pivots), "min_pivot": min(pivots), "positive": pos})
    return Report("gram", {"n": top, "q0": q0}, ok, {"rows": rows})


def cmd_vn(args) -> Report:
    n = args.n
    vs = cups.vspace(n)
    killed = all(cups.kills_both_caps(v) for v in vs.vectors)
    cups.save_vn_cache(cache_path(args), range(1, n + 1))
    return Report(
        "vn",
        {"n": n},
        killed and vs.dim == cups.vn_dimension_by_rank(n) if n <= args.rank_check_max else killed,
        {"dim": vs.dim, "norms": vs.norms, "vectors": vs.vectors, "caps_kill": killed,
         "cache": CACHE_FILE},
    )


def cmd_theta(args) -> Report:
    level = args.level if args.max_grade is None else min(args.level, args.max_grade)
    return cups.check_cup_action(level)


def cmd_moments(args) -> Report:
    top = args.max_i
    orth_bad, quad_err = [], 0.0
    for i in range(top + 1):
        for j in range(top + 1):
            pi, pj = shift.chebyshev(i), shift.chebyshev(j)
            if shift.inner_nu(pi, pj) != (1 if i == j else 0):
                orth_bad.append([i, j])
            quad_err = max(quad_err, abs(shift.inner_nu_quadrature(pi, pj) - (i == j)))
    moments = [shift.semicircle_moment(k) for k in range(2 * top + 1)]
    transport = [shift.moment_crosscheck(m, m + 1) for m in range(args.max_m + 1)]
    ok = not orth_bad and quad_err <= args.quad_tol and all(transport)
    return Report(
        "moments",
        {"max_i": top, "max_m": args.max_m, "quad_tol": args.quad_tol},
        ok,
        {
            "moments": moments,
            "orthonormal_failures": orth_bad,
            "quadrature_max_error": quad_err,
            "trace_transport": [r.to_json()["data"] | {"m": r.params["m"], "pass": r.passed}
                                for r in transport],
        },
    )


def cmd_chebyshev(args) -> Report:
    polys = [list(shift.chebyshev(i)) for i in range(args.max_i + 1)]
    psi = shift.check_psi_intertwining(args.max_i + 2)
    vi = [shift.vi_identity_check(i, args.N) for i in range(min(args.max_i, (args.N - 1) // 2) + 1)]
    tele = [shift.telescoping_check(k, args.tele_N) for k in range(2, args.max_k + 1)]
    checks = [psi] + vi + tele
    return Report(
        "chebyshev",
        {"max_i": args.max_i, "N": args.N, "max_k": args.max_k, "tele_N": args.tele_N},
        all(checks),
        {"polynomials": polys, "checks": [r.to_json() for r in checks]},
    )


def cmd_lemma(args) -> Report:
    rep = shift.lemma_ri_scan(tuple(args.bounds), args.grid_size, args.max_I)
    if args.format == "json" and not args.full:
        rep.data.pop("grid_min", None)
    return rep


def cmd_expansion(args) -> Report:
    reps = aop.expansion_family()
    data = {"cases": [r.to_report().to_json() for r in reps]}
    ok = all(r.to_report().passed for r in reps)
    if args.golden:
        written, bad = aop.golden_compare(reps, args.golden)
        data["golden"] = {"written": written, "mismatches": bad}
        ok &= not bad
    closure = [
        aop.bullet_closure_check(v, n, w)
        for mv in (2, 3) for v in cups.vspace(mv).vectors
        for mw in (2, 3) for w in cups.vspace(mw).vectors
        for n in range(4)
    ]
    data["closure_cases"] = len(closure)
    data["closure_pass"] = all(closure)
    return Report("aop-expansion", {}, ok and all(closure), data)


def cmd_orth(args) -> Report:
    rep = aop.orthogonality_family()
    if not args.full:
        rep.data.pop("values", None)
    return rep


def cmd_certificate(args) -> Report:
    rng = np.random.default_rng(args.seed)
    exact = args.mode == "exact"
    results, ok = [], True
    for _ in range(args.count):
        rep = _random_certificate(rng, args.N, args.I, Fraction(args.eps), exact)
        ok &= rep.passed
        results.append({"pass": rep.passed, "conclusive": rep.data["conclusive"],
                        "bound_sq": rep.data["bound_sq"],
                        "lines": {k: rep.data[k]["pass"] for k in "abcd"}})
    return Report(
        "certificate",
        {"N": args.N, "I": args.I, "eps": Fraction(args.eps), "count": args.count,
         "seed": args.seed, "mode": args.mode},
        ok,
        {"results": results},
    )


def _random_certificate(rng, N, I, eps, exact):
    xi = aop.sample_certificate_vector(rng, N, I, eps)
    if exact:
        return aop.pythagoras_certificate(xi, I, eps)
    return aop.pythagoras_certificate(xi.astype(float), I, float(eps), exact=False)


def cmd_eval(args) -> Report:
    node = expr.parse(args.expression)
    value = expr.evaluate(node, max_grade=args.max_grade)
    return Report("eval", {"expression": args.expression}, True,
                  {"ast": expr.to_text(node), "value": value})


# -- output ----------------------------------------------------------------------


def render(rep: Report, fmt: str, q0) -> str:
    obj = rep.to_json(q0)
    if fmt == "json":
        return dumps(obj)
    if fmt == "csv":
        rows = obj["data"].get("rows")
        if rows is None:
            rows = [{"check": obj["check"], "pass": obj["pass"],
                     "params": obj["params"], "data": obj["data"]}]
        return to_csv(rows).rstrip("\n")
    lines = [f"{obj['check']}: {'PASS' if obj['pass'] else 'FAIL'}"]
    for k, v in sorted(obj["params"].items()):
        lines.append(f"  {k} = {json.dumps(v, sort_keys=True)}")
    for k, v in sorted(obj["data"].items()):
        lines.append(f"  {k}: {json.dumps(v, sort_keys=True)}")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--q0", type=_rational, default=None,
                        help="evaluate scalars at this rational q in the output")
    common.add_argument("--max-grade", type=int, default=None, help="cap on grades")
    common.add_argument("--level", type=int, default=5, help="level of the labeled basis")
    common.add_argument("--format", choices=("json", "csv", "text"), default="json")
    common.add_argument("--quad-tol", type=float, default=1e-9)
    common.add_argument("--cache-dir", default=None)
    common.add_argument("--seed", type=int, default=0)

    p = argparse.ArgumentParser(prog="gjs-cup", description=__doc__, parents=[common])
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help):
        sp = sub.add_parser(name, parents=[common], help=help)
        sp.set_defaults(func=func)
        return sp

    sp = add("dims", cmd_dims, "Catalan numbers and dim V_n")
    sp.add_argument("--max-n", type=int, default=6)
    sp = add("gram", cmd_gram, "LDL pivots of the Gram matrix of P_n at q0 (default 2)")
    sp.add_argument("--n", type=int, default=5)
    sp = add("vn", cmd_vn, "compute and cache the basis of V_n")
    sp.add_argument("--n", type=int, default=4)
    sp.add_argument("--rank-check-max", type=int, default=5)
    add("theta-check", cmd_theta, "cup action in the labeled basis")
    sp = add("moments", cmd_moments, "semicircle moments, orthonormality, trace transport")
    sp.add_argument("--max-i", type=int, default=12)
    sp.add_argument("--max-m", type=int, default=8)
    sp = add("chebyshev", cmd_chebyshev, "P_i, the t-multiplication and shift identities")
    sp.add_argument("--max-i", type=int, default=12)
    sp.add_argument("--N", type=int, default=16)
    sp.add_argument("--max-k", type=int, default=4)
    sp.add_argument("--tele-N", type=int, default=10)
    sp = add("lemma-ri", cmd_lemma, "grid minima of R_I and the first I reaching each bound")
    sp.add_argument("--bounds", type=_int_list, default=[4, 10, 100])
    sp.add_argument("--grid-size", type=int, default=10_000)
    sp.add_argument("--max-I", type=int, default=500)
    sp.add_argument("--full", action="store_true", help="include every grid minimum")
    sp = add("aop-expansion", cmd_expansion, "product expansion and V closure")
    sp.add_argument("--golden", default=None, help="golden file to freeze or compare")
    sp = add("aop-orth", cmd_orth, "orthogonality <zb, bz> = 0 over the test family")
    sp.add_argument("--full", action="store_true", help="include every value")
    sp = add("certificate", cmd_certificate, "inequality chain on random unit vectors")
    sp.add_argument("--count", type=int, default=20)
    sp.add_argument("--N", type=int, default=16)
    sp.add_argument("--I", type=int, default=3)
    sp.add_argument("--eps", default="1/4")
    sp.add_argument("--mode", choices=("exact", "numeric"), default="exact")
    sp = add("eval", cmd_eval, "evaluate an expression")
    sp.add_argument("expression")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    cups.load_vn_cache(cache_path(args))
    try:
        rep = args.func(args)
    except (expr.ExprError, ValueError) as e:
        print(f"gjs-cup: error: {e}", file=sys.stderr)
        return 2
    try:
        out = render(rep, args.format, args.q0)
    except Exception as e:  # evaluation pole at q0
        print(f"gjs-cup: error: {e}", file=sys.stderr)
        return 2
    print(out)
    return 0 if rep.passed else 1


if __name__ == "__main__":
    sys.exit(main())
