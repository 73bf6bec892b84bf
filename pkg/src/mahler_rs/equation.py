"""Mahler operators L = a_0 + a_1 phi_p + ... + a_m phi_p^m."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import InvalidEquation
from .puiseux import PuiseuxPoly, substitute_power


@dataclass(frozen=True)
class Normalization:
    """Record of z -> z^delta followed by division by z^shift."""

    delta: int = 1
    shift: Fraction = Fraction(0)


@dataclass(frozen=True, eq=False)
class MahlerEquation:
    p: int
    coefficients: tuple  # of PuiseuxPoly over Fraction, index i = a_i
    normalization: Normalization | None = None
    name: str | None = field(default=None, compare=False)

    def __post_init__(self):
        if not isinstance(self.p, int) or self.p < 2:
            raise InvalidEquation(f"p must be an integer >= 2, got {self.p!r}")
        coeffs = tuple(c if isinstance(c, PuiseuxPoly) else _as_puiseux(c)
                       for c in self.coefficients)
        if len(coeffs) < 2:
            raise InvalidEquation("an equation needs at least a_0 and a_1")
        if not coeffs[0]:
            raise InvalidEquation("a_0 = 0")
        if not coeffs[-1]:
            raise InvalidEquation(f"a_{len(coeffs) - 1} = 0 (leading coefficient vanishes)")
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    m = order

    def valuations(self) -> list:
        """val_z a_i, with ``math.inf`` for vanishing middle coefficients."""
        out = []
        for a in self.coefficients:
            out.append(a.valuation() if a.terms else math.inf)
        return out

    @property
    def nu(self) -> Fraction:
        return max(v for v in self.valuations() if v != math.inf)

    @property
    def is_normalized(self) -> bool:
        vals = [v for v in self.valuations() if v != math.inf]
        if min(vals) != 0:
            return False
        return all(e.denominator == 1 and e >= 0
                   for a in self.coefficients for e in a.terms)

    def nonzero_indices(self) -> list[int]:
        return [i for i, a in enumerate(self.coefficients) if a.terms]

    def __eq__(self, other) -> bool:
        if not isinstance(other, MahlerEquation):
            return NotImplemented
        return self.p == other.p and self.coefficients == other.coefficients

    __hash__ = None

    def format(self) -> str:
        parts = []
        for i in range(self.order, -1, -1):
            a = self.coefficients[i]
            if not a.terms and a.truncation_order is None:
                continue
            arg = "z" if i == 0 else f"z^{self.p ** i}"
            parts.append(f"({a.format()})*f({arg})")
        return " + ".join(parts) + f" = 0 ; p={self.p}"

    def __str__(self) -> str:
        return self.format()


def _as_puiseux(c) -> PuiseuxPoly:
    if isinstance(c, dict):
        return PuiseuxPoly({Fraction(e): Fraction(v) for e, v in c.items()})
    if isinstance(c, (list, tuple)):
        return PuiseuxPoly({Fraction(n): Fraction(v) for n, v in enumerate(c)})
    return PuiseuxPoly({0: Fraction(c)})


def equation(p: int, coefficients: Sequence, name: str | None = None) -> MahlerEquation:
    """Convenience constructor.

    Each coefficient may be a :class:`PuiseuxPoly`, a dense list
    ``[a_{i,0}, a_{i,1}, ...]`` or a dict ``{exponent: value}``.
    """
    return MahlerEquation(p, tuple(_as_puiseux(c) if not isinstance(c, PuiseuxPoly) else c
                                   for c in coefficients), name=name)


def normalize_equation(eq: MahlerEquation) -> MahlerEquation:
    """Clear exponent denominators and divide by the smallest valuation.

    The result has power-series coefficients with min valuation 0; the
    substitution degree and the shift are kept in ``normalization``.
    """
    delta = 1
    for a in eq.coefficients:
        delta = math.lcm(delta, a.ramification)
        if a.truncation_order is not None:
            delta = math.lcm(delta, a.truncation_order.denominator)
    coeffs = [substitute_power(a, delta) if delta != 1 else a for a in eq.coefficients]
    shift = min(a.valuation() for a in coeffs if a.terms)
    if shift:
        coeffs = [a.scale_by_monomial(-shift) for a in coeffs]
    prev = eq.normalization or Normalization()
    record = Normalization(prev.delta * delta, prev.shift * delta + shift)
    return MahlerEquation(eq.p, tuple(coeffs), record, eq.name)


def scale_by_monomial(eq: MahlerEquation, w) -> MahlerEquation:
    """Multiply every coefficient by z^w."""
    return MahlerEquation(eq.p, tuple(a.scale_by_monomial(w) for a in eq.coefficients),
                          name=eq.name)


def ramify(eq: MahlerEquation, k) -> MahlerEquation:
    """Substitute z -> z^k in every coefficient."""
    return MahlerEquation(eq.p, tuple(substitute_power(a, k) for a in eq.coefficients),
                          name=eq.name)


def inverse_equation(eq: MahlerEquation) -> MahlerEquation:
    """The operator with reversed coefficient order."""
    return MahlerEquation(eq.p, tuple(reversed(eq.coefficients)), name=eq.name)
