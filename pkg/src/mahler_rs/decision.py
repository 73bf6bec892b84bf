"""Top-level decision procedure and the shortcut criteria."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .algebraic import ExponentClass
from .equation import MahlerEquation, Normalization, normalize_equation
from .errors import PrecisionError
from .newton import NewtonPolygon, exponents, newton_polygon
from .poly import Poly
from .puiseux import PuiseuxPoly
from .solver import SolverTrace, solve_with_splitting


# reasons
@dataclass(frozen=True)
class SlopeDenominator:
    slope: Fraction
    name = "SlopeDenominator"


@dataclass(frozen=True)
class TruncatedSolutionMissing:
    cls: ExponentClass
    j: int
    trace: SolverTrace
    name = "TruncatedSolutionMissing"


@dataclass(frozen=True)
class AllTruncatedSolutionsFound:
    traces: tuple  # of SolverTrace, one per (branch, j)
    name = "AllTruncatedSolutionsFound"


@dataclass(frozen=True)
class OneSlopeShortcut:
    name = "OneSlopeShortcut"


@dataclass(frozen=True)
class TwoSlopeCriterion:
    result: bool
    failing: tuple = ()  # classes for which the divisibility fails
    name = "TwoSlopeCriterion"


@dataclass(frozen=True)
class Verdict:
    regular_singular: bool
    reason: object
    p: int
    normalization: Normalization
    polygon: NewtonPolygon
    classes: tuple
    nu: Fraction
    p_exceeds_nu: bool
    equation: MahlerEquation | None = field(default=None, compare=False)

    def __bool__(self) -> bool:
        return self.regular_singular


def check_slope_denominators(np_: NewtonPolygon, p: int) -> Fraction | None:
    """The first slope whose denominator shares a factor with p, else None."""
    for e in np_.edges:
        if math.gcd(e.slope.denominator, p) != 1:
            return e.slope
    return None


def one_slope_shortcut(np_: NewtonPolygon) -> bool:
    return len(np_.edges) == 1


def fuchsian_check(eq: MahlerEquation) -> bool:
    """val a_0 = val a_m = min_i val a_i."""
    vals = [v for v in eq.valuations() if v != math.inf]
    low = min(vals)
    return eq.coefficients[0].valuation() == low == eq.coefficients[-1].valuation()


def two_slope_applicable(eq: MahlerEquation, np_: NewtonPolygon) -> bool:
    if not eq.is_normalized or not eq.p > eq.nu:
        return False
    return len(np_.edges) == 2 and np_.edges[1].slope == 0


def truncated_lambda_polys(eq: MahlerEquation) -> list[Poly]:
    """P_n(lambda) = sum_i a_{i,n} lambda^i for n = 0 .. val a_0."""
    top = eq.coefficients[0].valuation()
    out = []
    for n in range(int(top) + 1):
        coeffs = []
        for i, a in enumerate(eq.coefficients):
            try:
                coeffs.append(a.coefficient(n))
            except PrecisionError as exc:
                raise PrecisionError(f"a_{i} must be known through z^{top}",
                                     coefficient=i, required=top) from exc
        out.append(Poly(coeffs))
    return out


def two_slope_criterion(eq: MahlerEquation, np_: NewtonPolygon | None = None,
                        classes: Sequence[ExponentClass] | None = None
                        ) -> TwoSlopeCriterion | None:
    """Divisibility test for two slopes with the second one null and p > nu.

    Returns None when the preconditions do not hold.
    """
    eq = eq if eq.is_normalized else normalize_equation(eq)
    np_ = np_ or newton_polygon(eq)
    if not two_slope_applicable(eq, np_):
        return None
    classes = classes if classes is not None else exponents(np_)
    polys = truncated_lambda_polys(eq)
    failing = []
    for cls in classes:
        k = cls.m(2)
        if not k:
            continue
        qk = cls.defining ** k
        if any(P % qk for P in polys):
            failing.append(cls)
    return TwoSlopeCriterion(not failing, tuple(failing))


def _pairs(classes) -> list[tuple[int, ExponentClass]]:
    pairs = [(j, cls) for cls in classes for j in cls.slopes()]
    pairs.sort(key=lambda jc: (jc[0], jc[1].sort_key()))
    return pairs


def _run_pair(eq, np_, cls, j, debug_recompute):
    # a class groups roots of a squarefree factor, not of an irreducible one,
    # so branches produced by splitting may legitimately differ
    return solve_with_splitting(eq, np_, cls, j, debug_recompute)


def _first_failure(branches):
    for _, t in branches:
        if not t.found:
            return t
    return None


def is_regular_singular(eq: MahlerEquation, shortcuts: bool = True, parallel: bool = False,
                        debug_recompute: bool = False) -> Verdict:
    norm = normalize_equation(eq)
    np_ = newton_polygon(norm)
    classes = tuple(exponents(np_))
    nu = norm.nu
    base = dict(p=norm.p, normalization=norm.normalization, polygon=np_, classes=classes,
                nu=nu, p_exceeds_nu=norm.p > nu, equation=norm)

    bad = check_slope_denominators(np_, norm.p)
    if bad is not None:
        return Verdict(False, SlopeDenominator(bad), **base)

    if shortcuts:
        if one_slope_shortcut(np_):
            return Verdict(True, OneSlopeShortcut(), **base)
        crit = two_slope_criterion(norm, np_, classes)
        if crit is not None:
            return Verdict(crit.result, crit, **base)

    pairs = _pairs(classes)
    traces: list[SolverTrace] = []
    if parallel and len(pairs) > 1:
        with ThreadPoolExecutor() as pool:
            futures = [pool.submit(_run_pair, norm, np_, cls, j, debug_recompute)
                       for j, cls in pairs]
            results = [f.result() for f in futures]
    else:
        results = []
        for j, cls in pairs:
            branches = _run_pair(norm, np_, cls, j, debug_recompute)
            results.append(branches)
            if _first_failure(branches) is not None:
                break
    for (j, cls), branches in zip(pairs, results):
        failed = _first_failure(branches)
        if failed is not None:
            return Verdict(False, TruncatedSolutionMissing(failed.cls, j, failed), **base)
        traces.extend(t for _, t in branches)
    return Verdict(True, AllTruncatedSolutionsFound(tuple(traces)), **base)


def large_p_shape_holds(verdict: Verdict) -> bool:
    """A regular singular equation with p > nu has one slope, or two with the
    second one null."""
    if not (verdict.regular_singular and verdict.p_exceeds_nu):
        return True
    slopes = verdict.polygon.slopes
    return len(slopes) == 1 or (len(slopes) == 2 and slopes[1] == 0)


@dataclass(frozen=True)
class SweepRow:
    p: int
    verdict: Verdict | None
    precondition_met: bool
    error: str | None = None


@dataclass(frozen=True)
class SweepReport:
    rows: tuple
    agree: bool


def with_p(coefficients: Sequence[PuiseuxPoly], p: int) -> MahlerEquation:
    return MahlerEquation(p, tuple(coefficients))


def p_sweep(coefficients: Sequence[PuiseuxPoly], p_list: Sequence[int],
            shortcuts: bool = True) -> SweepReport:
    """Decide the same coefficient list for several values of p."""
    rows = []
    for p in p_list:
        eq = normalize_equation(with_p(coefficients, p))
        met = p > eq.nu
        rows.append(SweepRow(p, is_regular_singular(eq, shortcuts=shortcuts), met))
    answers = {r.verdict.regular_singular for r in rows if r.precondition_met}
    return SweepReport(tuple(rows), len(answers) <= 1)


def twist_equation(eq: MahlerEquation, c) -> MahlerEquation:
    """L_c: a_i is multiplied by c^i."""
    c = Fraction(c)
    if c == 0:
        raise ValueError("twisting by c = 0 is undefined")
    return MahlerEquation(eq.p, tuple(a.scale(c ** i) if i else a
                                      for i, a in enumerate(eq.coefficients)), name=eq.name)
