"""JSON-ready dictionaries for verdicts and their parts, and back.

Every number is written as an exact string ("-3/4", "5"); nothing is a
float. ``verdict_from_dict(verdict_to_dict(v))`` rebuilds ``v``.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .algebraic import AlgElem, ExponentClass
from .decision import (AllTruncatedSolutionsFound, OneSlopeShortcut, SlopeDenominator,
                       TruncatedSolutionMissing, TwoSlopeCriterion, Verdict)
from .equation import Normalization
from .local import LocalElem
from .newton import Edge, NewtonPolygon
from .parser import equation_document, parse_document, parse_rational
from .poly import Poly
from .puiseux import PuiseuxPoly
from .solver import FailedDivision, FailedGrid, Found, SolverTrace, Step

SCHEMA_VERSION = 1


def q(x) -> str:
    if x == math.inf:
        return "inf"
    return str(Fraction(x))


def unq(s) -> Fraction | float:
    if s == "inf":
        return math.inf
    return parse_rational(s)


# algebra
def poly_to_list(P: Poly) -> list[str]:
    return [q(c) for c in P.coeffs]


def poly_from_list(xs) -> Poly:
    return Poly([unq(x) for x in xs])


def local_to_dict(x: LocalElem) -> dict:
    """Coefficients of t^k = (λ - c)^k, each a polynomial in c (ascending)."""
    return {"modulus": x.modulus,
            "coeffs": [poly_to_list(a.rep) for a in x.coeffs],
            "lambda_form": x.format()}


def local_from_dict(d: dict, cls: ExponentClass) -> LocalElem:
    ring = cls.ring
    return LocalElem(ring, [AlgElem(ring, poly_from_list(c)) for c in d["coeffs"]],
                     d["modulus"])


def puiseux_to_dict(f: PuiseuxPoly, value=q) -> dict:
    order = f.truncation_order
    return {"terms": [[q(e), value(c)] for e, c in f.terms.items()],
            "truncation_order": None if order is None else q(order)}


def puiseux_from_dict(d: dict, value=unq) -> PuiseuxPoly:
    order = d.get("truncation_order")
    return PuiseuxPoly({unq(e): value(c) for e, c in d["terms"]},
                       None if order is None else unq(order))


def class_to_dict(cls: ExponentClass) -> dict:
    return {"label": cls.label(),
            "defining": poly_to_list(cls.defining),
            "multiplicities": {str(j): m for j, m in cls.multiplicities.items()},
            "offsets": {str(j): s for j, s in cls.offsets.items()}}


def class_from_dict(d: dict) -> ExponentClass:
    mults = {int(j): m for j, m in d["multiplicities"].items()}
    return ExponentClass(poly_from_list(d["defining"]), mults)


# polygon
def edge_to_dict(e: Edge) -> dict:
    return {"index": e.index, "slope": q(e.slope), "left": e.left, "right": e.right,
            "multiplicity": e.multiplicity, "indices": list(e.indices),
            "charpoly": poly_to_list(e.charpoly), "charpoly_text": e.charpoly.format("λ"),
            "theta": q(e.theta)}


def edge_from_dict(d: dict) -> Edge:
    return Edge(d["index"], unq(d["slope"]), d["left"], d["right"], tuple(d["indices"]),
                poly_from_list(d["charpoly"]), unq(d["theta"]))


def polygon_to_dict(np_: NewtonPolygon) -> dict:
    return {"p": np_.p, "d": np_.d,
            "points": [[i, q(v)] for i, v in np_.points],
            "edges": [edge_to_dict(e) for e in np_.edges]}


def polygon_from_dict(d: dict) -> NewtonPolygon:
    return NewtonPolygon(d["p"], tuple(edge_from_dict(e) for e in d["edges"]),
                         tuple((i, unq(v)) for i, v in d["points"]))


# traces
def _outcome_to_dict(o) -> dict:
    if isinstance(o, Found):
        return {"kind": "Found", "final_v": q(o.final_v),
                "f": puiseux_to_dict(o.f, local_to_dict)}
    return {"kind": type(o).__name__, "v": q(o.v)}


def _outcome_from_dict(d: dict, cls: ExponentClass):
    kind = d["kind"]
    if kind == "Found":
        return Found(puiseux_from_dict(d["f"], lambda x: local_from_dict(x, cls)),
                     unq(d["final_v"]))
    if kind == "FailedGrid":
        return FailedGrid(unq(d["v"]))
    if kind == "FailedDivision":
        return FailedDivision(unq(d["v"]))
    raise ValueError(f"unknown outcome {kind!r}")


def trace_to_dict(t: SolverTrace) -> dict:
    return {"class": class_to_dict(t.cls), "j": t.j, "modulus": t.modulus,
            "seed": local_to_dict(t.seed), "step_bound": t.step_bound,
            "steps": [{"v": q(s.v), "alpha": local_to_dict(s.alpha),
                       "beta": local_to_dict(s.beta), "h": local_to_dict(s.h)}
                      for s in t.steps],
            "outcome": _outcome_to_dict(t.outcome)}


def trace_from_dict(d: dict) -> SolverTrace:
    cls = class_from_dict(d["class"])
    loc = lambda x: local_from_dict(x, cls)  # noqa: E731
    steps = tuple(Step(unq(s["v"]), loc(s["alpha"]), loc(s["beta"]), loc(s["h"]))
                  for s in d["steps"])
    return SolverTrace(cls, d["j"], d["modulus"], loc(d["seed"]), steps,
                       _outcome_from_dict(d["outcome"], cls), d["step_bound"])


# verdicts
def reason_to_dict(r) -> dict:
    out = {"name": r.name}
    if isinstance(r, SlopeDenominator):
        out["slope"] = q(r.slope)
    elif isinstance(r, TruncatedSolutionMissing):
        out.update({"class": class_to_dict(r.cls), "j": r.j, "trace": trace_to_dict(r.trace)})
    elif isinstance(r, AllTruncatedSolutionsFound):
        out["traces"] = [trace_to_dict(t) for t in r.traces]
    elif isinstance(r, TwoSlopeCriterion):
        out["result"] = r.result
        out["failing"] = [class_to_dict(c) for c in r.failing]
    return out


def reason_from_dict(d: dict):
    name = d["name"]
    if name == "SlopeDenominator":
        return SlopeDenominator(unq(d["slope"]))
    if name == "TruncatedSolutionMissing":
        return TruncatedSolutionMissing(class_from_dict(d["class"]), d["j"],
                                        trace_from_dict(d["trace"]))
    if name == "AllTruncatedSolutionsFound":
        return AllTruncatedSolutionsFound(tuple(trace_from_dict(t) for t in d["traces"]))
    if name == "OneSlopeShortcut":
        return OneSlopeShortcut()
    if name == "TwoSlopeCriterion":
        return TwoSlopeCriterion(d["result"], tuple(class_from_dict(c) for c in d["failing"]))
    raise ValueError(f"unknown reason {name!r}")


def reason_text(r) -> str:
    if isinstance(r, SlopeDenominator):
        return f"SlopeDenominator({r.slope})"
    if isinstance(r, TruncatedSolutionMissing):
        return f"TruncatedSolutionMissing({r.cls.label()}, j={r.j}: {r.trace.outcome})"
    if isinstance(r, TwoSlopeCriterion):
        return f"TwoSlopeCriterion({'holds' if r.result else 'fails'})"
    return r.name


def verdict_to_dict(v: Verdict) -> dict:
    norm = v.normalization
    return {"schema": SCHEMA_VERSION,
            "regular_singular": v.regular_singular,
            "reason": reason_to_dict(v.reason),
            "reason_text": reason_text(v.reason),
            "p": v.p,
            "normalization": {"delta": norm.delta, "shift": q(norm.shift)},
            "nu": q(v.nu),
            "p_exceeds_nu": v.p_exceeds_nu,
            "polygon": polygon_to_dict(v.polygon),
            "classes": [class_to_dict(c) for c in v.classes],
            "equation": None if v.equation is None else equation_document(v.equation)}


def verdict_from_dict(d: dict) -> Verdict:
    if d.get("schema") != SCHEMA_VERSION:
        raise ValueError(f"unsupported schema {d.get('schema')!r}")
    norm = Normalization(d["normalization"]["delta"], unq(d["normalization"]["shift"]))
    eq = None
    if d.get("equation") is not None:
        eq = parse_document(d["equation"])
        eq = type(eq)(eq.p, eq.coefficients, norm, eq.name)
    return Verdict(d["regular_singular"], reason_from_dict(d["reason"]), d["p"], norm,
                   polygon_from_dict(d["polygon"]),
                   tuple(class_from_dict(c) for c in d["classes"]),
                   unq(d["nu"]), d["p_exceeds_nu"], eq)
