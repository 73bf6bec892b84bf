"""Search for reduced truncated solutions, one pair (c, j) at a time."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .algebraic import ExponentClass, split_evaluate
from .equation import MahlerEquation
from .local import LocalElem, local_divide
from .mahler_ops import (apply_L_lambda, monomial_image, omega, pi_map, seed_coefficient,
                         window_bound)
from .newton import NewtonPolygon
from .puiseux import PuiseuxPoly


@dataclass(frozen=True)
class Step:
    v: Fraction
    alpha: LocalElem
    beta: LocalElem
    h: LocalElem


@dataclass(frozen=True)
class Found:
    f: PuiseuxPoly
    final_v: object  # pi(val g) at exit, math.inf when g vanished in the window

    ok = True


@dataclass(frozen=True)
class FailedGrid:
    v: Fraction

    ok = False


@dataclass(frozen=True)
class FailedDivision:
    v: Fraction

    ok = False


@dataclass(frozen=True)
class SolverTrace:
    cls: ExponentClass
    j: int
    modulus: int
    seed: LocalElem
    steps: tuple[Step, ...]
    outcome: object  # Found | FailedGrid | FailedDivision
    step_bound: int = 0  # d (mu_j - mu_1) + 1

    @property
    def found(self) -> bool:
        return self.outcome.ok

    def solution(self) -> "TruncatedSolution | None":
        if not self.found:
            return None
        return TruncatedSolution(self.outcome.f, self.cls, self.j)


@dataclass(frozen=True)
class TruncatedSolution:
    f: PuiseuxPoly
    cls: ExponentClass
    j: int


def grid_size(np_: NewtonPolygon, j: int) -> int:
    """d (mu_j - mu_1) + 1: number of exponents available to the search."""
    return int(np_.d * (np_.edge(j).slope - np_.edges[0].slope)) + 1


class _Images:
    """Memoised windows of L_lambda(z^v), exact and expanded around c."""

    def __init__(self, eq, cls, modulus, bound):
        self.eq, self.cls, self.modulus, self.bound = eq, cls, modulus, bound
        self._exact: dict[Fraction, dict] = {}
        self._local: dict[Fraction, PuiseuxPoly] = {}

    def exact(self, v):
        if v not in self._exact:
            self._exact[v] = monomial_image(self.eq, v, self.bound, inclusive=True)
        return self._exact[v]

    def local(self, v) -> PuiseuxPoly:
        if v not in self._local:
            ring = self.cls.ring
            self._local[v] = PuiseuxPoly(
                {e: LocalElem.from_poly(ring, P, self.modulus)
                 for e, P in self.exact(v).items()})
        return self._local[v]


def find_reduced_truncated_solution(eq: MahlerEquation, np_: NewtonPolygon,
                                    cls: ExponentClass, j: int,
                                    debug_recompute: bool = False) -> SolverTrace:
    """Build f = r z^{-mu_j} + ... monomial by monomial until
    pi(val g) > -mu_1 or an obstruction is met.

    May raise :class:`~mahler_rs.algebraic.SplitRequired`; use
    :func:`solve_with_splitting` to get one trace per branch.
    """
    n = cls.modulus(j)
    mu1 = np_.edges[0].slope
    mu_j = np_.edge(j).slope
    d = np_.d
    bound = window_bound(eq, np_)
    images = _Images(eq, cls, n, bound)

    seed = seed_coefficient(eq, np_, cls, j)
    f_terms: dict[Fraction, LocalElem] = {-mu_j: seed}
    g = images.local(-mu_j).scale(seed)
    steps: list[Step] = []
    limit = grid_size(np_, j)

    while True:
        if not g.terms:
            v = math.inf
        else:
            v = pi_map(eq, g.valuation())
        if v > -mu1:
            outcome = Found(PuiseuxPoly(f_terms), v)
            break
        if (v * d).denominator != 1:
            outcome = FailedGrid(v)
            break
        exact = images.exact(v)
        alpha = LocalElem.from_poly(cls.ring, exact[omega(eq, v)], n)
        beta = g.cld()
        h = local_divide(beta, alpha)
        if h is None:
            outcome = FailedDivision(v)
            break
        steps.append(Step(v, alpha, beta, h))
        if len(steps) > limit:
            raise AssertionError(f"solver exceeded the grid bound {limit}")
        f_terms[v] = f_terms[v] - h if v in f_terms else -h
        g = g - images.local(v).scale(h)
        if debug_recompute:
            fresh = apply_L_lambda(eq, PuiseuxPoly(f_terms), bound, inclusive=True)
            if fresh != g:
                raise AssertionError(f"incremental g diverged from L_lambda(f) at v={v}")

    return SolverTrace(cls, j, n, seed, tuple(steps), outcome, limit)


def solve_with_splitting(eq: MahlerEquation, np_: NewtonPolygon, cls: ExponentClass,
                         j: int, debug_recompute: bool = False
                         ) -> list[tuple[ExponentClass, SolverTrace]]:
    return split_evaluate(
        cls, lambda k: find_reduced_truncated_solution(eq, np_, k, j, debug_recompute))


@dataclass
class ConditionReport:
    results: dict = field(default_factory=dict)  # "C1".."C6" -> bool
    details: dict = field(default_factory=dict)

    @property
    def all_pass(self) -> bool:
        return all(self.results.values())

    def __getitem__(self, key: str) -> bool:
        return self.results[key]


def verify_conditions(eq: MahlerEquation, np_: NewtonPolygon, sol: TruncatedSolution
                      ) -> ConditionReport:
    """Re-check C1..C6 from scratch for a candidate f_{c,j}.

    Coefficients of ``f`` may be stored with a modulus >= s+m; the λ-degree
    conditions are read from the stored representative.
    """
    cls, j, f = sol.cls, sol.j, sol.f
    n = cls.modulus(j)
    mu1 = np_.edges[0].slope
    mu_j = np_.edge(j).slope
    d = np_.d
    rep = ConditionReport()

    if not f.terms:
        for key in ("C1", "C2", "C3", "C4", "C5", "C6"):
            rep.results[key] = False
        rep.details["empty"] = True
        return rep

    for c in f.terms.values():
        if c.modulus < n:
            raise ValueError("solution coefficients are stored below the modulus s+m")

    reduced = PuiseuxPoly({v: c.truncate(n).with_modulus(n) for v, c in f.terms.items()})
    bound = window_bound(eq, np_)
    image = apply_L_lambda(eq, reduced, bound, inclusive=True) if reduced.terms else PuiseuxPoly()
    rep.results["C1"] = not image.terms
    rep.details["C1"] = image.valuation() if image.terms else math.inf

    off_grid = [v for v in f.terms if (v * d).denominator != 1 or not (-mu_j <= v <= -mu1)]
    rep.results["C2"] = not off_grid
    rep.details["C2"] = off_grid

    seed = seed_coefficient(eq, np_, cls, j)
    low = f.valuation()
    rep.results["C3"] = (f.terms[low].truncate(n).with_modulus(n) - seed).is_zero()
    rep.results["C4"] = low == -mu_j

    degrees = {v: c.degree() for v, c in f.terms.items()}
    rep.results["C5"] = max(degrees.values()) <= n - 1
    rep.details["C5"] = degrees

    c6 = True
    for k in range(1, j):
        v = -np_.edge(k).slope
        if v in f.terms and degrees[v] > n - cls.m(k) - 1:
            c6 = False
    rep.results["C6"] = c6
    return rep
