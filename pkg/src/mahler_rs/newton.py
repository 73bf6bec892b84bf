"""Newton polygon, characteristic polynomials and exponent classes."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .algebraic import ExponentClass
from .equation import MahlerEquation
from .errors import PrecisionError
from .poly import (NonUniformMultiplicity, Poly, factor_multiplicity, gcd_free_basis,
                   squarefree_decomposition)


@dataclass(frozen=True)
class Edge:
    """One non-vertical edge, from (p^left, val a_left) to (p^right, val a_right)."""

    index: int  # j, counted from 1
    slope: Fraction
    left: int
    right: int
    indices: tuple[int, ...]
    charpoly: Poly
    theta: Fraction

    @property
    def multiplicity(self) -> int:
        return self.right - self.left

    r = multiplicity

    def stripped_charpoly(self) -> Poly:
        """chi_j divided by its power of lambda (the nonzero-root part)."""
        return self.charpoly.shift(-self.left)


@dataclass(frozen=True)
class NewtonPolygon:
    p: int
    edges: tuple[Edge, ...]
    points: tuple[tuple[int, Fraction], ...]  # (i, val a_i) for nonzero a_i

    @property
    def d(self) -> int:
        d = 1
        for e in self.edges:
            d = math.lcm(d, e.slope.denominator)
        return d

    @property
    def slopes(self) -> list[Fraction]:
        return [e.slope for e in self.edges]

    def edge(self, j: int) -> Edge:
        return self.edges[j - 1]

    def __len__(self) -> int:
        return len(self.edges)


def _cross(o, a, b) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def newton_polygon(eq: MahlerEquation) -> NewtonPolygon:
    """Lower convex hull of the points (p^i, val a_i)."""
    p = eq.p
    pts = []
    for i, a in enumerate(eq.coefficients):
        if a.terms:
            pts.append((i, a.valuation()))
    # monotone chain on (p^i, v), keeping only strict turns as vertices
    hull: list[tuple[int, Fraction]] = []
    for i, v in pts:
        q = (p ** i, v)
        while len(hull) >= 2:
            o = (p ** hull[-2][0], hull[-2][1])
            a = (p ** hull[-1][0], hull[-1][1])
            if _cross(o, a, q) <= 0:
                hull.pop()
            else:
                break
        hull.append((i, v))

    edges = []
    for k in range(len(hull) - 1):
        (i0, v0), (i1, v1) = hull[k], hull[k + 1]
        slope = Fraction(v1 - v0) / (p ** i1 - p ** i0)
        on_edge = tuple(i for i, v in pts
                        if i0 <= i <= i1 and v - v0 == slope * (p ** i - p ** i0))
        chi = Poly([0] * (i1 + 1))
        for i in on_edge:
            chi = chi + Poly.monomial(i, eq.coefficients[i].cld())
        theta = v0 - slope * p ** i0
        edges.append(Edge(k + 1, slope, i0, i1, on_edge, chi, Fraction(theta)))

    # a coefficient known only as O(z^T) could still lower the hull
    for i, a in enumerate(eq.coefficients):
        if not a.terms and a.truncation_order is not None:
            x = p ** i
            bound = max(e.theta + e.slope * x for e in edges)
            if a.truncation_order <= bound:
                raise PrecisionError(
                    f"a_{i} is only known as O(z^{a.truncation_order}); its valuation "
                    f"is needed to build the Newton polygon", coefficient=i,
                    required=bound)
    return NewtonPolygon(p, tuple(edges), tuple(pts))


def characteristic_polynomial(edge: Edge) -> Poly:
    return edge.charpoly


def exponents(np_: NewtonPolygon) -> list[ExponentClass]:
    """Exponent classes with their per-slope multiplicities.

    The nonzero-root parts of every chi_j are decomposed into squarefree
    pieces; a gcd-free basis of all pieces gives classes whose roots share
    the same multiplicity on every slope.
    """
    parts = {e.index: e.stripped_charpoly() for e in np_.edges}
    pieces = []
    for part in parts.values():
        pieces.extend(g for g, _ in squarefree_decomposition(part))
    todo = gcd_free_basis(pieces)
    classes = []
    while todo:
        q = todo.pop()
        try:
            mults = {j: factor_multiplicity(part, q) for j, part in parts.items()}
        except NonUniformMultiplicity as exc:
            g = exc.factor.monic()
            todo.extend([g, q.exact_div(g).monic()])
            continue
        mults = {j: k for j, k in mults.items() if k}
        if mults:
            classes.append(ExponentClass(q, mults))
    classes.sort(key=lambda c: c.sort_key())
    total = sum(c.degree * k for c in classes for k in c.multiplicities.values())
    expected = sum(e.multiplicity for e in np_.edges)
    if total != expected:  # pragma: no cover - guards the decomposition
        raise AssertionError(f"exponent count {total} != order {expected}")
    return classes


def classes_for_slope(classes: list[ExponentClass], j: int) -> list[ExponentClass]:
    return [c for c in classes if c.m(j) > 0]

