"""Command line: ``qhermite {expand,apply,verify,table,ortho,limit}``.

Exit codes: 0 success, 1 a mathematical check failed, 2 usage or domain error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from fractions import Fraction

import numpy as np

from .exact import NotDivisible, SPoly, spoly_exact_div
from .laurent import Dressed, XPoly, render_spoly_q, render_xpoly, x_to_z, z_to_x
from .numerics import (
    QuadratureSpec,
    dyadic_q_sequence,
    expected_norms,
    gram_matrix,
    limit16_check,
    limit17_check,
    specialize,
)
from .operators import apply_Aq, apply_calD, apply_calD_dressed, apply_Dq, apply_tildeD
from .polynomials import classical_hermite, qhermite, qinv_hermite
from .verify import DEFAULT_MAX_N, IDENTITIES, run_identity

FAMILIES = {
    "qhermite": qhermite,
    "qinv": qinv_hermite,
    "hermite": classical_hermite,
}

S_LEGEND = "s = q^(1/2)"


class UsageError(Exception):
    pass


def parse_q(text: str) -> Fraction:
    """Exact ``p/r`` string in (0, 1); decimals are refused."""
    if any(ch in text for ch in ".eE"):
        raise UsageError(f"q must be an exact fraction such as 1/2, got {text!r}")
    try:
        q = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"cannot parse q={text!r}; use the form p/r") from None
    if not 0 < q < 1:
        raise UsageError(f"q must satisfy 0 < q < 1, got {q}")
    return q


def _envelope(command, parameters, status, cases, max_error, runtime_ms, **extra):
    doc = {
        "command": command,
        "parameters": parameters,
        "status": status,
        "cases": cases,
        "max_error": max_error,
        "runtime_ms": runtime_ms,
    }
    doc.update(extra)
    return doc


def _dump_json(doc) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def _csv_text(rows) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\r\n").writerows(rows)
    return buf.getvalue()


def _degrees(args) -> list[int]:
    if args.n is not None:
        return [args.n]
    return list(range(args.max_n + 1))


def _coeff_map(p: XPoly) -> dict[str, str]:
    return {str(k): render_spoly_q(c) for k, c in enumerate(p.coeffs) if not c.is_zero()}


def cmd_expand(args, out) -> tuple[dict, int]:
    fn = FAMILIES[args.family]
    degs = _degrees(args)
    polys = [(n, fn(n)) for n in degs]
    uses_s = any(not c.only_even() for _, p in polys for c in p.coeffs)
    params = {"family": args.family, "degrees": degs}
    if args.format == "text":
        if len(polys) == 1:
            out.write(render_xpoly(polys[0][1]) + "\n")
        else:
            for n, p in polys:
                out.write(f"{n}: {render_xpoly(p)}\n")
        if uses_s:
            out.write(f"# {S_LEGEND}\n")
        return None, 0
    if args.format == "csv":
        rows = [["family", "n", "power", "coefficient"]]
        for n, p in polys:
            for k, c in enumerate(p.coeffs):
                if not c.is_zero():
                    rows.append([args.family, n, k, render_spoly_q(c)])
        out.write(_csv_text(rows))
        return None, 0
    result = [{"n": n, "text": render_xpoly(p), "coefficients": _coeff_map(p)} for n, p in polys]
    doc = _envelope("expand", params, "ok", len(polys), 0.0, None, result=result)
    if uses_s:
        doc["legend"] = S_LEGEND
    return doc, 0


OPERATORS = ("Aq", "Dq", "calD", "calD-inv", "calD-dressed-inv", "tildeD")


def cmd_apply(args, out) -> tuple[dict, int]:
    hyperbolic = args.operator == "tildeD"
    fn = qinv_hermite if hyperbolic else FAMILIES[args.family]
    if hyperbolic and args.family != "qinv":
        raise UsageError("tildeD acts on the qinv family (x = sinh phi)")
    if not hyperbolic and args.family == "qinv":
        raise UsageError("qinv polynomials live on the hyperbolic variable; use tildeD")
    results = []
    for n in _degrees(args):
        p = fn(n)
        f = x_to_z(p)
        if args.operator == "Aq":
            image = z_to_x(apply_Aq(f))
        elif args.operator == "Dq":
            image = z_to_x(apply_Dq(f))
        elif args.operator == "calD":
            image = z_to_x(apply_calD(f))
        elif args.operator == "calD-inv":
            image = z_to_x(apply_calD(f, inverted=True))
        elif args.operator == "calD-dressed-inv":
            image = z_to_x(apply_calD_dressed(Dressed(f, 1), inverted=True).part)
        else:
            image = z_to_x(apply_tildeD(f))
        eig = _eigenvalue(image, p)
        results.append(
            {
                "n": n,
                "input": render_xpoly(p),
                "output": render_xpoly(image),
                "eigenvalue": None if eig is None else eig.to_str("s"),
            }
        )
    params = {"operator": args.operator, "family": args.family, "degrees": _degrees(args)}
    if args.format == "text":
        for r in results:
            line = f"{r['n']}: {r['output']}"
            if r["eigenvalue"] is not None:
                line += f"    [eigenvalue {r['eigenvalue']}]"
            out.write(line + "\n")
        out.write(f"# {S_LEGEND}\n")
        return None, 0
    if args.format == "csv":
        rows = [["n", "input", "output", "eigenvalue"]]
        rows += [[r["n"], r["input"], r["output"], r["eigenvalue"] or ""] for r in results]
        out.write(_csv_text(rows))
        return None, 0
    return _envelope("apply", params, "ok", len(results), 0.0, None, result=results, legend=S_LEGEND), 0


def _eigenvalue(image: XPoly, p: XPoly) -> SPoly | None:
    """``lam`` with ``image == lam * p``, if the leading coefficients allow one."""
    if image.degree != p.degree or p.is_zero():
        return None
    try:
        lam = spoly_exact_div(image.leading(), p.leading())
    except NotDivisible:
        return None
    return lam if image == p * lam else None


def cmd_verify(args, out) -> tuple[dict, int]:
    max_n = DEFAULT_MAX_N[args.identity] if args.max_n is None else args.max_n
    res = run_identity(args.identity, max_n, mutate=args.mutate, samples=args.samples, seed=args.seed)
    status = "verified" if res.verified else "failed"
    params = {"identity": args.identity, "max_n": max_n, "samples": args.samples, "seed": args.seed}
    if args.mutate:
        params["mutate"] = True
    extra = {}
    fail = res.first_failure
    if fail is not None:
        part = fail.residual.part if isinstance(fail.residual, Dressed) else fail.residual
        extra["failure"] = {"n": fail.input_n, "residual": repr(part)[:2000]}
    doc = _envelope("verify", params, status, res.cases, res.max_error, None, **extra)
    return doc, 0 if res.verified else 1


def cmd_ortho(args, out) -> tuple[dict, int]:
    q = parse_q(args.q)
    spec = QuadratureSpec(q, args.nodes, args.truncation)
    G = gram_matrix(args.max_n, spec)
    off = float(np.max(np.abs(G - np.diag(np.diag(G))))) if args.max_n else 0.0
    diag_err = float(np.max(np.abs(np.diag(G) / expected_norms(args.max_n, spec.q) - 1)))
    ok = off < args.tol_offdiag and diag_err < args.tol_diag
    meta = {
        "q": str(q),
        "nodes": spec.node_count,
        "truncation": spec.weight_truncation,
        "max_offdiagonal": off,
        "max_diagonal_relative_error": diag_err,
    }
    params = {"q": str(q), "max_n": args.max_n, "nodes": spec.node_count, "truncation": spec.weight_truncation}
    code = 0 if ok else 1
    if args.format == "csv":
        rows = [["m"] + [str(n) for n in range(args.max_n + 1)]]
        rows += [[m] + [repr(float(v)) for v in row] for m, row in enumerate(G)]
        out.write(_csv_text(rows))
        for k, v in meta.items():
            print(f"# {k}={v}", file=sys.stderr)
        return None, code
    if args.format == "text":
        for row in G:
            out.write(" ".join(f"{v: .12e}" for v in row) + "\n")
        for k, v in meta.items():
            out.write(f"# {k}={v}\n")
        return None, code
    doc = _envelope(
        "ortho",
        params,
        "verified" if ok else "failed",
        (args.max_n + 1) ** 2,
        max(off, diag_err),
        None,
        metadata=meta,
        matrix=[[float(v) for v in row] for row in G],
    )
    return doc, code


def cmd_limit(args, out) -> tuple[dict, int]:
    qs = dyadic_q_sequence(args.k_min, args.k_max)
    if args.which == "eq16":
        deg = args.n if args.n is not None else 3
        rep = limit16_check(deg, qs)
    else:
        deg = args.m if args.m is not None else 1
        rep = limit17_check(deg, qs)
    ok = rep.first_order(args.ratio_lo, args.ratio_hi)
    params = {"which": args.which, "degree": deg, "k_min": args.k_min, "k_max": args.k_max}
    rows = [
        {"k": k, "q": str(q), "deviation": d}
        for k, q, d in zip(range(args.k_min, args.k_max + 1), rep.q_sequence, rep.deviations)
    ]
    code = 0 if ok else 1
    if args.format == "csv":
        table = [["k", "q", "deviation"]] + [[r["k"], r["q"], repr(r["deviation"])] for r in rows]
        out.write(_csv_text(table))
        return None, code
    if args.format == "text":
        for r in rows:
            out.write(f"{r['k']:>3} {r['q']:>12} {r['deviation']:.6e}\n")
        return None, code
    doc = _envelope(
        "limit",
        params,
        "verified" if ok else "failed",
        len(rows),
        max(rep.deviations, default=0.0),
        None,
        rows=rows,
        ratios=rep.ratios(),
    )
    return doc, code


def cmd_table(args, out) -> tuple[dict, int]:
    fn = FAMILIES[args.family]
    q = parse_q(args.q) if args.family != "hermite" else None
    xs = np.linspace(args.x_min, args.x_max, args.points)
    degs = list(range(args.max_n + 1))
    cols = []
    for n in degs:
        p = fn(n)
        coeffs = specialize(p, q if q is not None else 0)
        cols.append(np.polynomial.polynomial.polyval(xs, coeffs))
    params = {"family": args.family, "q": None if q is None else str(q), "max_n": args.max_n,
              "x_min": args.x_min, "x_max": args.x_max, "points": args.points}
    if args.format == "csv":
        rows = [["x"] + [f"P{n}" for n in degs]]
        rows += [[repr(float(x))] + [repr(float(c[i])) for c in cols] for i, x in enumerate(xs)]
        out.write(_csv_text(rows))
        return None, 0
    if args.format == "text":
        for i, x in enumerate(xs):
            out.write(f"{x: .6f} " + " ".join(f"{c[i]: .10e}" for c in cols) + "\n")
        return None, 0
    table = [{"x": float(x), "values": [float(c[i]) for c in cols]} for i, x in enumerate(xs)]
    return _envelope("table", params, "ok", len(xs), 0.0, None, rows=table), 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qhermite", description=__doc__.splitlines()[0])
    parser.add_argument("--timing", action="store_true", help="record runtime_ms in JSON output")
    sub = parser.add_subparsers(dest="command", required=True)

    def fmt(p, default):
        p.add_argument("--format", choices=["json", "csv", "text"], default=default)

    def degrees(p):
        g = p.add_mutually_exclusive_group(required=True)
        g.add_argument("--n", type=int)
        g.add_argument("--max-n", type=int)

    p = sub.add_parser("expand", help="print polynomial coefficients")
    p.add_argument("--family", choices=sorted(FAMILIES), required=True)
    degrees(p)
    fmt(p, "text")

    p = sub.add_parser("apply", help="apply an operator to a family member")
    p.add_argument("--operator", choices=OPERATORS, required=True)
    p.add_argument("--family", choices=sorted(FAMILIES), default="qhermite")
    degrees(p)
    fmt(p, "text")

    p = sub.add_parser("verify", help="run an identity suite")
    p.add_argument("--identity", choices=IDENTITIES, required=True)
    p.add_argument("--max-n", type=int)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mutate", action="store_true", help=argparse.SUPPRESS)
    fmt(p, "json")

    p = sub.add_parser("table", help="tabulate family values on an x grid")
    p.add_argument("--family", choices=sorted(FAMILIES), required=True)
    p.add_argument("--q", default="1/2")
    p.add_argument("--max-n", type=int, default=5)
    p.add_argument("--x-min", type=float, default=-1.0)
    p.add_argument("--x-max", type=float, default=1.0)
    p.add_argument("--points", type=int, default=11)
    fmt(p, "csv")

    p = sub.add_parser("ortho", help="Gram matrix of H_n by quadrature")
    p.add_argument("--q", required=True)
    p.add_argument("--max-n", type=int, default=8)
    p.add_argument("--nodes", type=int, default=400)
    p.add_argument("--truncation", type=int)
    p.add_argument("--tol-offdiag", type=float, default=1e-10)
    p.add_argument("--tol-diag", type=float, default=1e-9)
    fmt(p, "json")

    p = sub.add_parser("limit", help="q -> 1 limit checks")
    p.add_argument("--which", choices=["eq16", "eq17"], required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--k-min", type=int, default=4)
    p.add_argument("--k-max", type=int, default=12)
    p.add_argument("--ratio-lo", type=float, default=0.4)
    p.add_argument("--ratio-hi", type=float, default=0.6)
    fmt(p, "json")
    return parser


COMMANDS = {
    "expand": cmd_expand,
    "apply": cmd_apply,
    "verify": cmd_verify,
    "table": cmd_table,
    "ortho": cmd_ortho,
    "limit": cmd_limit,
}


def _check_ranges(args):
    for name in ("n", "max_n", "m"):
        v = getattr(args, name, None)
        if v is not None and v < 0:
            raise UsageError(f"--{name.replace('_', '-')} must be nonnegative")
    if getattr(args, "nodes", 2) < 2:
        raise UsageError("--nodes must be at least 2")
    if getattr(args, "points", 2) < 1:
        raise UsageError("--points must be positive")
    if args.command == "limit" and args.k_min >= args.k_max:
        raise UsageError("--k-min must be below --k-max")


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    start = time.perf_counter()
    try:
        _check_ranges(args)
        doc, code = COMMANDS[args.command](args, out)
    except UsageError as exc:
        print(f"qhermite {args.command}: error: {exc}", file=sys.stderr)
        return 2
    if doc is not None:
        if args.timing:
            doc["runtime_ms"] = round((time.perf_counter() - start) * 1000, 3)
        if getattr(args, "format", "json") == "text" and args.command == "verify":
            out.write(f"{doc['status']}: {doc['cases']} cases, max_error {doc['max_error']}\n")
        else:
            out.write(_dump_json(doc))
    return code


if __name__ == "__main__":
    sys.exit(main())
