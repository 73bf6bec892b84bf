"""Finite Puiseux polynomials (optionally truncated) over a generic ring.

Exponents are exact :class:`~fractions.Fraction` values. Coefficients may be
anything supporting ``+``, ``*`` and truthiness as a zero test: rationals,
:class:`~mahler_rs.local.LocalElem`, sympy field elements, ...

A ``truncation_order`` T records that coefficients at exponents ``>= T``
are unknown. Reading one raises :class:`PrecisionError` rather than
returning a silent zero.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Mapping

from .errors import PrecisionError


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


def _min_order(*orders):
    known = [o for o in orders if o is not None and o != math.inf]
    return min(known) if known else None


class PuiseuxPoly:
    __slots__ = ("terms", "truncation_order")

    def __init__(self, terms: Mapping | Iterable[tuple] = (), truncation_order=None):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Fraction, object] = {}
        for e, c in items:
            e = Fraction(e)
            acc[e] = acc[e] + c if e in acc else c
        order = None if truncation_order is None else Fraction(truncation_order)
        cleaned = {}
        for e in sorted(acc):
            if order is not None and e >= order:
                continue
            c = acc[e]
            if c:
                cleaned[e] = c
        self.terms: dict[Fraction, object] = cleaned
        self.truncation_order: Fraction | None = order

    @classmethod
    def monomial(cls, exponent, coeff=1, truncation_order=None) -> "PuiseuxPoly":
        return cls({Fraction(exponent): coeff}, truncation_order)

    # queries
    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[tuple[Fraction, object]]:
        return iter(self.terms.items())

    def support(self) -> list[Fraction]:
        return list(self.terms)

    def valuation(self):
        """Least exponent of the support; ``math.inf`` for the zero series."""
        if not self.terms:
            if self.truncation_order is not None:
                raise PrecisionError(
                    f"valuation unknown: no nonzero term below z^{self.truncation_order}")
            return math.inf
        return next(iter(self.terms))

    def cld(self):
        """Coefficient of lowest degree."""
        if not self.terms:
            raise ValueError("the zero series has no lowest-degree coefficient")
        return next(iter(self.terms.values()))

    def coefficient(self, exponent, zero=0):
        e = Fraction(exponent)
        if self.truncation_order is not None and e >= self.truncation_order:
            raise PrecisionError(
                f"coefficient of z^{e} requested but only terms below "
                f"z^{self.truncation_order} are known")
        return self.terms.get(e, zero)

    def __getitem__(self, exponent):
        return self.coefficient(exponent)

    @property
    def ramification(self) -> int:
        """Least common denominator of the support."""
        d = 1
        for e in self.terms:
            d = _lcm(d, e.denominator)
        return d

    def degree(self):
        if not self.terms:
            return -math.inf
        return next(reversed(self.terms))

    # normalisation of exponent grids
    def to_grid(self, ramification: int | None = None) -> tuple[int, dict[int, object]]:
        """Integer exponent numerators over a common denominator."""
        d = self.ramification if ramification is None else ramification
        out = {}
        for e, c in self.terms.items():
            n = e * d
            if n.denominator != 1:
                raise ValueError(f"exponent {e} is not on the grid (1/{d})Z")
            out[int(n)] = c
        return d, out

    @classmethod
    def from_grid(cls, ramification: int, terms: Mapping[int, object],
                  truncation_order=None) -> "PuiseuxPoly":
        return cls({Fraction(n, ramification): c for n, c in terms.items()}, truncation_order)

    # ring operations
    def __add__(self, other: "PuiseuxPoly") -> "PuiseuxPoly":
        if not isinstance(other, PuiseuxPoly):
            return NotImplemented
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms[e] + c if e in terms else c
        return PuiseuxPoly(terms, _min_order(self.truncation_order, other.truncation_order))

    def __neg__(self) -> "PuiseuxPoly":
        return PuiseuxPoly({e: -c for e, c in self.terms.items()}, self.truncation_order)

    def __sub__(self, other: "PuiseuxPoly") -> "PuiseuxPoly":
        if not isinstance(other, PuiseuxPoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other) -> "PuiseuxPoly":
        if not isinstance(other, PuiseuxPoly):
            return self.scale(other)
        order = _min_order(_shift(self.truncation_order, other._val_or_inf()),
                           _shift(other.truncation_order, self._val_or_inf()))
        acc: dict[Fraction, object] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                if order is not None and e >= order:
                    continue
                prod = c1 * c2
                acc[e] = acc[e] + prod if e in acc else prod
        return PuiseuxPoly(acc, order)

    def __rmul__(self, other) -> "PuiseuxPoly":
        return PuiseuxPoly({e: other * c for e, c in self.terms.items()}, self.truncation_order)

    def _val_or_inf(self):
        return next(iter(self.terms)) if self.terms else math.inf

    def scale(self, coeff) -> "PuiseuxPoly":
        return PuiseuxPoly({e: c * coeff for e, c in self.terms.items()}, self.truncation_order)

    def scale_by_monomial(self, exponent, coeff=None) -> "PuiseuxPoly":
        """Multiply by ``coeff * z**exponent``."""
        w = Fraction(exponent)
        terms = {e + w: (c if coeff is None else c * coeff) for e, c in self.terms.items()}
        order = None if self.truncation_order is None else self.truncation_order + w
        return PuiseuxPoly(terms, order)

    def map_coefficients(self, fn: Callable) -> "PuiseuxPoly":
        return PuiseuxPoly({e: fn(c) for e, c in self.terms.items()}, self.truncation_order)

    def truncate(self, order) -> "PuiseuxPoly":
        """Forget terms at exponents ``>= order``."""
        return PuiseuxPoly(self.terms, _min_order(self.truncation_order, Fraction(order)))

    def exact_part(self) -> "PuiseuxPoly":
        """The known terms, read as an exact polynomial."""
        return PuiseuxPoly(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PuiseuxPoly):
            return NotImplemented
        if self.truncation_order != other.truncation_order:
            return False
        if list(self.terms) != list(other.terms):
            return False
        return all(self.terms[e] == other.terms[e] for e in self.terms)

    __hash__ = None

    def format(self, fmt: Callable[[object], str] = str) -> str:
        if not self.terms and self.truncation_order is None:
            return "0"
        parts = []
        for e, c in self.terms.items():
            cs = fmt(c)
            if e == 0:
                mono = ""
            elif e == 1:
                mono = "z"
            elif e.denominator == 1:
                mono = f"z^{e}"
            else:
                mono = f"z^({e})"
            if not mono:
                parts.append(cs)
            elif cs == "1":
                parts.append(mono)
            elif cs == "-1":
                parts.append("-" + mono)
            else:
                wrapped = cs if _is_atomic(cs) else f"({cs})"
                parts.append(f"{wrapped}*{mono}")
        s = " + ".join(parts).replace("+ -", "- ") if parts else "0"
        if self.truncation_order is not None:
            s += f" + O(z^{self.truncation_order})"
        return s

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"PuiseuxPoly({self.format()})"


def _is_atomic(s: str) -> bool:
    body = s[1:] if s.startswith("-") else s
    return not any(ch in body for ch in "+- ")


def _shift(order, amount):
    if order is None:
        return None
    if amount == math.inf:
        return None
    return order + amount


def valuation(f: PuiseuxPoly):
    return f.valuation()


def cld(f: PuiseuxPoly):
    return f.cld()


def mahler_substitute(f: PuiseuxPoly, p: int) -> PuiseuxPoly:
    """z -> z^p: exponents and truncation order are scaled by p."""
    if p < 2:
        raise ValueError("the Mahler parameter p must be at least 2")
    return substitute_power(f, p)


def substitute_power(f: PuiseuxPoly, k) -> PuiseuxPoly:
    """z -> z^k for any positive rational k."""
    k = Fraction(k)
    if k <= 0:
        raise ValueError("substitution power must be positive")
    order = None if f.truncation_order is None else f.truncation_order * k
    return PuiseuxPoly({e * k: c for e, c in f.terms.items()}, order)
