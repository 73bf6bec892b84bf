"""mahler-rs: decide whether a p-Mahler equation is regular singular at 0.

Input is a file holding either a JSON equation document or a one-line
equation such as ``z^8*f(z^4) - (z^2+z^3+z^7)*f(z^2) + (1+z)*f(z) = 0 ; p=2``.
A one-liner may also be passed directly in place of the file name.

Exit status: 0 regular singular, 1 not regular singular, 2 bad input or
insufficient precision.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__
from .decision import (TruncatedSolutionMissing, _pairs, is_regular_singular, p_sweep)
from .equation import normalize_equation
from .errors import MahlerError, PrecisionError
from .mahler_ops import window_bound
from .newton import exponents, newton_polygon
from .oracle import branches_agree, format_field, frobenius_prefix, oracle_with_splitting
from .parser import ParseError, load_equation, parse_rational, parse_text
from .serialize import (class_to_dict, local_to_dict, polygon_to_dict, q, reason_text,
                        trace_to_dict, verdict_to_dict)
from .solver import Found, solve_with_splitting, verify_conditions

EXIT_TRUE, EXIT_FALSE, EXIT_ERROR = 0, 1, 2


def _read(source: str):
    if source != "-" and not os.path.exists(source) and "f(" in source:
        return parse_text(source)
    return load_equation(source)


def _emit(args, data, lines):
    if args.json:
        json.dump(data, sys.stdout, indent=2, ensure_ascii=False)
        sys.stdout.write("\n")
    else:
        for line in lines:
            print(line)


def _class_line(cls) -> str:
    mults = ", ".join(f"m_{j}={m} (s={cls.s(j)})" for j, m in cls.multiplicities.items())
    return f"  {cls.label()}: {mults}"


# subcommands
def cmd_decide(args) -> int:
    eq = _read(args.source)
    v = is_regular_singular(eq, shortcuts=not args.no_shortcuts, parallel=args.parallel,
                            debug_recompute=args.debug_recompute)
    lines = [f"equation: {eq.format()}",
             f"regular singular: {str(v.regular_singular).lower()}",
             f"reason: {reason_text(v.reason)}",
             f"slopes: {', '.join(str(s) for s in v.polygon.slopes)}",
             f"nu = {v.nu}, p > nu: {str(v.p_exceeds_nu).lower()}"]
    if isinstance(v.reason, TruncatedSolutionMissing):
        lines += _trace_lines(v.reason.trace, v.polygon, window_bound(v.equation, v.polygon))
    _emit(args, verdict_to_dict(v), lines)
    return EXIT_TRUE if v.regular_singular else EXIT_FALSE


def cmd_polygon(args) -> int:
    eq = normalize_equation(_read(args.source))
    np_ = newton_polygon(eq)
    lines = [f"normalized: {eq.format()}",
             "points: " + ", ".join(f"({eq.p ** i}, {v})" for i, v in np_.points),
             f"d = {np_.d}"]
    for e in np_.edges:
        lines.append(f"  mu_{e.index} = {e.slope}  r = {e.multiplicity}  "
                     f"chi_{e.index} = {e.charpoly.format('λ')}  theta = {e.theta}")
    _emit(args, polygon_to_dict(np_), lines)
    return EXIT_TRUE


def cmd_exponents(args) -> int:
    eq = normalize_equation(_read(args.source))
    classes = exponents(newton_polygon(eq))
    _emit(args, [class_to_dict(c) for c in classes],
          ["exponents:"] + [_class_line(c) for c in classes])
    return EXIT_TRUE


def _trace_lines(t, np_, window) -> list[str]:
    mu1 = np_.edges[0].slope
    lines = [f"(c, j) = ({t.cls.label()}, {t.j})   modulus t^{t.modulus}, t = λ - c",
             f"  r = {t.seed}",
             f"  f := ({t.seed})*z^{-np_.edge(t.j).slope}"]
    if t.steps:
        rows = [("v", "alpha", "beta", "h")]
        rows += [(str(s.v), str(s.alpha), str(s.beta), str(s.h)) for s in t.steps]
        widths = [max(len(r[k]) for r in rows) for k in range(4)]
        for r in rows:
            lines.append("    " + "  ".join(x.ljust(w) for x, w in zip(r, widths)).rstrip())
    o = t.outcome
    if isinstance(o, Found):
        lines.append(f"  f = {o.f.format(lambda c: c.format())}")
        if o.final_v == float("inf"):
            tail = f"g has no term up to z^{window}"
        else:
            tail = f"v = {o.final_v} > -mu_1 = {-mu1}"
        lines.append(f"  {tail}: found")
    else:
        lines.append(f"  {type(o).__name__} at v = {o.v}: no reduced truncated solution")
    lines.append(f"  steps {len(t.steps)} (bound {t.step_bound})")
    return lines


def cmd_trace(args) -> int:
    eq = normalize_equation(_read(args.source))
    np_ = newton_polygon(eq)
    traces = []
    for j, cls in _pairs(exponents(np_)):
        if args.slope is not None and j != args.slope:
            continue
        for _, t in solve_with_splitting(eq, np_, cls, j, args.debug_recompute):
            traces.append(t)
    lines = []
    for t in traces:
        lines += _trace_lines(t, np_, window_bound(eq, np_))
    _emit(args, [trace_to_dict(t) for t in traces], lines)
    return EXIT_TRUE if all(t.found for t in traces) else EXIT_FALSE


def cmd_prefix(args) -> int:
    eq = normalize_equation(_read(args.source))
    np_ = newton_polygon(eq)
    order = parse_rational(args.order, "--order")
    out, lines = [], []
    for j, cls in _pairs(exponents(np_)):
        if args.slope is not None and j != args.slope:
            continue
        pre = frobenius_prefix(eq, cls, j, order, np_)
        reduced = pre.reduced_terms()
        exact = pre.exact() if cls.rational_root() is not None else None
        terms = []
        for v, g in pre.unscaled.terms.items():
            row = {"v": q(v), "G": format_field(g), "reduced": local_to_dict(reduced[v])}
            if exact is not None:
                row["g"] = format_field(exact.terms[v])
            terms.append(row)
        out.append({"class": class_to_dict(cls), "j": j, "order": q(order),
                    "theta": q(pre.theta), "modulus": pre.modulus, "terms": terms})
        lines.append(f"(c, j) = ({cls.label()}, {j})  theta = {pre.theta}  "
                     f"terms below z^{order}:")
        for row in terms:
            shown = row.get("g", f"(λ-c)^{pre.modulus} * ({row['G']})")
            lines.append(f"  z^{row['v']}: {shown}   [mod t^{pre.modulus}: "
                         f"{row['reduced']['lambda_form']}]")
    _emit(args, out, lines)
    return EXIT_TRUE


def cmd_sweep(args) -> int:
    eq = _read(args.source)
    p_list = [int(x) for x in args.p.split(",") if x.strip()]
    rep = p_sweep(eq.coefficients, p_list, shortcuts=not args.no_shortcuts)
    data = {"rows": [{"p": r.p, "precondition_met": r.precondition_met,
                      "verdict": verdict_to_dict(r.verdict)} for r in rep.rows],
            "agree": rep.agree}
    lines = ["p     p>nu   regular singular   reason"]
    for r in rep.rows:
        verdict = str(r.verdict.regular_singular).lower()
        lines.append(f"{r.p:<5} {str(r.precondition_met).lower():<6} "
                     f"{verdict:<18} {reason_text(r.verdict.reason)}")
    lines.append(f"agreement over p > nu: {'yes' if rep.agree else 'NO'}")
    _emit(args, data, lines)
    return EXIT_TRUE if all(r.verdict.regular_singular for r in rep.rows) else EXIT_FALSE


def cmd_oracle_check(args) -> int:
    eq = normalize_equation(_read(args.source))
    np_ = newton_polygon(eq)
    rows, lines, ok = [], [], True
    for j, cls in _pairs(exponents(np_)):
        solved = solve_with_splitting(eq, np_, cls, j)
        oracle = oracle_with_splitting(eq, np_, cls, j)
        agree = branches_agree([(k, t.found) for k, t in solved],
                               [(k, r.feasible) for k, r in oracle])
        verified = all(verify_conditions(eq, np_, t.solution()).all_pass
                       for _, t in solved if t.found)
        ok = ok and agree and verified
        rows.append({"class": class_to_dict(cls), "j": j,
                     "solver": [t.found for _, t in solved],
                     "oracle": [r.feasible for _, r in oracle],
                     "agree": agree, "witnesses_verified": verified})
        lines.append(f"({cls.label()}, {j}): solver {[t.found for _, t in solved]} "
                     f"oracle {[r.feasible for _, r in oracle]} "
                     f"{'agree' if agree else 'DISAGREE'}"
                     f"{'' if verified else ', witness fails C1..C6'}")
    _emit(args, {"pairs": rows, "ok": ok}, lines)
    return EXIT_TRUE if ok else EXIT_FALSE


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="mahler-rs", description=__doc__.split("\n\n")[0])
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("source", help="equation file (JSON or one-liner), '-' for stdin, "
                                       "or a one-line equation")
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        sp.set_defaults(func=func)
        return sp

    sp = add("decide", cmd_decide, "decide regular singularity")
    sp.add_argument("--parallel", action="store_true", help="run (class, slope) pairs concurrently")
    sp.add_argument("--no-shortcuts", action="store_true",
                    help="skip the one-slope and two-slope criteria")
    sp.add_argument("--debug-recompute", action="store_true",
                    help="recompute L_lambda(f) from scratch after every step")
    add("polygon", cmd_polygon, "Newton polygon and characteristic polynomials")
    add("exponents", cmd_exponents, "exponents with multiplicities")
    sp = add("trace", cmd_trace, "step table of the truncated-solution search")
    sp.add_argument("--slope", type=int, help="only this slope index j")
    sp.add_argument("--debug-recompute", action="store_true")
    sp = add("prefix", cmd_prefix, "Puiseux prefix of g_{c,j}")
    sp.add_argument("--order", required=True, help="exponent bound, e.g. 9 or 5/2")
    sp.add_argument("--slope", type=int, help="only this slope index j")
    sp = add("sweep", cmd_sweep, "decide the same coefficients for several p")
    sp.add_argument("--p", required=True, help="comma-separated list, e.g. 5,7,11")
    sp.add_argument("--no-shortcuts", action="store_true")
    add("oracle-check", cmd_oracle_check, "compare the solver with the linear-algebra oracle")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except PrecisionError as exc:
        need = f" (required truncation order: beyond z^{exc.required})" \
            if exc.required is not None else ""
        print(f"mahler-rs: precision error: {exc}{need}", file=sys.stderr)
    except (ParseError, MahlerError, ValueError, OSError) as exc:
        print(f"mahler-rs: error: {exc}", file=sys.stderr)
    return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
