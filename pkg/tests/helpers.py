"""Equation generators and fixed examples shared by the tests."""

from __future__ import annotations

import math
import random
from fractions import Fraction

from mahler_rs.decision import check_slope_denominators
from mahler_rs.equation import MahlerEquation, equation, normalize_equation
from mahler_rs.newton import newton_polygon
from mahler_rs.parser import parse_equation
from mahler_rs.puiseux import PuiseuxPoly

WORKED_EXAMPLE = "z^8*f(z^4) - (z^2+z^3+z^7)*f(z^2) + (1+z)*f(z) = 0 ; p=2"
WORKED_INVERSE = "z^8*f(z) - (z^2+z^3+z^7)*f(z^2) + (1+z)*f(z^4) = 0 ; p=2"
ALPHA2 = "z^8*f(z^4) - (z^2+z^3+2*z^7)*f(z^2) + (1+z)*f(z) = 0 ; p=2"
ALPHA2_INVERSE = "z^8*f(z) - (z^2+z^3+2*z^7)*f(z^2) + (1+z)*f(z^4) = 0 ; p=2"
FOUR_SLOPES = ("2*z^2*f(z^16) + (1+z)*f(z^8) + (-2+z^2)*f(z^4) + (1-z)*f(z^2) "
               "+ 2*z^3*f(z) = 0 ; p=2")
TWO_SLOPE_TRUE = "f(z^25) - (1+z)*f(z^5) + z*f(z) = 0"
TWO_SLOPE_FALSE = "f(z^25) - (1+2*z)*f(z^5) + z*f(z) = 0"


def parsed(text: str) -> MahlerEquation:
    return parse_equation(text)


def _poly(rng: random.Random, low: int, length: int, span: int = 3) -> dict:
    """Integer coefficients on z^low .. z^{low+length-1}, nonzero at z^low."""
    terms = {low: rng.choice([c for c in range(-span, span + 1) if c])}
    for e in range(low + 1, low + length):
        c = rng.randint(-span, span)
        if c:
            terms[e] = c
    return terms


def random_equation(rng: random.Random, p: int | None = None, max_order: int = 4,
                    max_val: int = 6, length: int = 3, sparsity: float = 0.3,
                    min_val_zero: bool = False) -> MahlerEquation:
    """a_0 .. a_m with integer coefficients and valuations at most ``max_val``.

    Interior coefficients vanish with probability ``sparsity``.
    """
    p = p or rng.choice([2, 3])
    m = rng.randint(1, max_order)
    coeffs = []
    for i in range(m + 1):
        if 0 < i < m and rng.random() < sparsity:
            coeffs.append({})
            continue
        coeffs.append(_poly(rng, rng.randint(0, max_val), rng.randint(1, length)))
    if min_val_zero:
        low = min(min(c) for c in coeffs if c)
        coeffs = [{e - low: v for e, v in c.items()} for c in coeffs]
    return equation(p, coeffs)


def multi_slope_equation(rng: random.Random, p: int | None = None, max_order: int = 4,
                         max_val: int = 6, length: int = 4, tries: int = 200
                         ) -> MahlerEquation:
    """Like :func:`random_equation` but the valuations are resampled until the
    polygon has at least two slopes whose denominators are prime to p."""
    p = p or rng.choice([2, 3])
    for _ in range(tries):
        m = rng.randint(2, max_order)
        vals = [rng.randint(0, max_val) if (i in (0, m) or rng.random() > 0.3) else None
                for i in range(m + 1)]
        points = [(p ** i, v) for i, v in enumerate(vals) if v is not None]
        if _hull_ok(points, p):
            break
    coeffs = [_poly(rng, v, rng.randint(1, length)) if v is not None else {} for v in vals]
    return equation(p, coeffs)


def _hull_ok(points, p) -> bool:
    hull = []
    for pt in points:
        while len(hull) >= 2:
            (x0, y0), (x1, y1) = hull[-2], hull[-1]
            if (y1 - y0) * (pt[0] - x0) >= (pt[1] - y0) * (x1 - x0):
                hull.pop()
            else:
                break
        hull.append(pt)
    slopes = [Fraction(b[1] - a[1], b[0] - a[0]) for a, b in zip(hull, hull[1:])]
    return len(slopes) >= 2 and all(math.gcd(s.denominator, p) == 1 for s in slopes)


def mixed_equation(rng: random.Random, p: int | None = None) -> MahlerEquation:
    if rng.random() < 0.5:
        return multi_slope_equation(rng, p)
    return random_equation(rng, p, length=4)


def slope_check_passes(eq: MahlerEquation) -> bool:
    norm = normalize_equation(eq)
    return check_slope_denominators(newton_polygon(norm), norm.p) is None


def one_slope_equation(rng: random.Random, p: int | None = None, max_order: int = 3
                       ) -> MahlerEquation:
    """All points (p^i, val a_i) on or above the segment joining the end points."""
    p = p or rng.choice([2, 3])
    m = rng.randint(1, max_order)
    v0 = rng.randint(-2, 6)
    k = rng.randint(-6, 6)
    span = p ** m - 1
    coeffs = []
    for i in range(m + 1):
        line = v0 + Fraction(k * (p ** i - 1), span)
        if i in (0, m):
            low = int(line)
        elif rng.random() < 0.4:
            coeffs.append({})
            continue
        else:
            low = math.ceil(line) + rng.randint(0, 2)
        coeffs.append(_poly(rng, low, rng.randint(1, 3)))
    return equation(p, coeffs)


def two_slope_equation(rng: random.Random, p: int) -> MahlerEquation:
    """Normalized, nu < p, slopes mu_1 < 0 = mu_2 with chi_2 = b lambda^k (lambda - c).

    With probability 1/2 the top coefficient is adjusted so that every
    P_n vanishes at c, which makes the divisibility criterion hold.
    """
    m = rng.randint(2, 3)
    k = m - 1  # the flat edge joins (p^{m-1}, 0) and (p^m, 0)
    nu0 = rng.randint(1, p - 1)  # val a_0
    c = Fraction(rng.choice([1, -1, 2, -2, 3]), rng.choice([1, 1, 2]))
    b = rng.choice([1, -1, 2, 3])
    dense = [[Fraction(0)] * (nu0 + 1) for _ in range(m + 1)]
    dense[m][0] = Fraction(b)
    dense[k][0] = -b * c
    dense[0][nu0] = Fraction(rng.choice([1, -1, 2, -3]))
    # interior points must stay strictly above the first edge
    for i in range(1, k):
        line = Fraction(nu0) * (p ** k - p ** i) / (p ** k - 1)
        for n in range(math.floor(line) + 1, nu0 + 1):
            if rng.random() < 0.5:
                dense[i][n] = Fraction(rng.randint(-2, 2))
    for i in range(k, m + 1):
        for n in range(1, nu0 + 1):
            if rng.random() < 0.6:
                dense[i][n] = Fraction(rng.randint(-2, 2))
    if rng.random() < 0.5:
        for n in range(1, nu0 + 1):
            rest = sum(dense[i][n] * c ** i for i in range(m))
            dense[m][n] = -rest / c ** m
    coeffs = [PuiseuxPoly({n: x for n, x in enumerate(row) if x}) for row in dense]
    return MahlerEquation(p, tuple(coeffs))


def small_equation(rng: random.Random, p: int | None = None) -> MahlerEquation:
    """Random equation kept small enough for the invariance suite."""
    return random_equation(rng, p, max_order=3, max_val=4, length=3)


class Recorder:
    """Collects one PASS/FAIL line per acceptance criterion."""

    lines: list[str] = []

    @classmethod
    def record(cls, number: int, ok: bool, detail: str) -> None:
        cls.lines.append(f"{'PASS' if ok else 'FAIL'} criterion {number}: {detail}")
        print(cls.lines[-1])
