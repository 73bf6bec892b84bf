"""Truncated power series in t = (λ - c) with coefficients in Q[x]/(q).

A :class:`LocalElem` is an element of K_q[[t]]/(t^N) where c is the class of
``x`` in K_q = Q[x]/(q). Every product is truncated eagerly at t^N.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from .algebraic import AlgElem, NumberRing
from .poly import Poly


class LocalElem:
    __slots__ = ("ring", "coeffs", "modulus")

    def __init__(self, ring: NumberRing, coeffs: Sequence[AlgElem], modulus: int):
        if modulus < 1:
            raise ValueError("modulus must be a positive integer")
        self.ring = ring
        cs = list(coeffs[:modulus])
        # drop structurally-zero tail; no zero tests (they may split)
        while cs and not cs[-1].rep:
            cs.pop()
        self.coeffs: tuple[AlgElem, ...] = tuple(cs)
        self.modulus = modulus

    # constructors
    @classmethod
    def zero(cls, ring: NumberRing, modulus: int) -> "LocalElem":
        return cls(ring, (), modulus)

    @classmethod
    def constant(cls, ring: NumberRing, value, modulus: int) -> "LocalElem":
        return cls(ring, (ring(value),), modulus)

    @classmethod
    def t_power(cls, ring: NumberRing, k: int, modulus: int) -> "LocalElem":
        return cls(ring, [ring.zero] * k + [ring.one], modulus)

    @classmethod
    def from_poly(cls, ring: NumberRing, f: Poly, modulus: int) -> "LocalElem":
        """Expand a polynomial in λ with rational coefficients around λ = c."""
        coeffs = []
        for k, pk in enumerate(f.taylor_coefficients()):
            if k >= modulus:
                break
            coeffs.append(ring.eval_poly(pk))
        return cls(ring, coeffs, modulus)

    @classmethod
    def from_lambda_coeffs(cls, ring: NumberRing, coeffs: Sequence, modulus: int) -> "LocalElem":
        """Expand ``sum_k coeffs[k] λ^k`` (coefficients in K_q) around λ = c."""
        c = ring.gen()
        t = cls.t_power(ring, 1, modulus)
        lam = t + cls.constant(ring, c, modulus)
        acc = cls.zero(ring, modulus)
        for a in reversed(list(coeffs)):
            acc = acc * lam + cls.constant(ring, a, modulus)
        return acc

    # queries
    def __getitem__(self, k: int) -> AlgElem:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        if k >= self.modulus:
            raise IndexError(f"coefficient t^{k} is beyond the modulus t^{self.modulus}")
        return self.ring.zero

    def valuation(self):
        """(λ - c)-adic valuation; ``math.inf`` if the element is 0 mod t^N."""
        for k, a in enumerate(self.coeffs):
            if not a.is_zero():
                return k
        return math.inf

    def is_zero(self) -> bool:
        return self.valuation() == math.inf

    def __bool__(self) -> bool:
        return not self.is_zero()

    def degree(self) -> int:
        """Degree in t (equal to the degree in λ); -1 for zero."""
        for k in range(len(self.coeffs) - 1, -1, -1):
            if not self.coeffs[k].is_zero():
                return k
        return -1

    def _check(self, other: "LocalElem"):
        if other.ring != self.ring or other.modulus != self.modulus:
            raise ValueError("local elements live in different rings")

    # arithmetic
    def _coerce(self, other) -> "LocalElem | None":
        if isinstance(other, LocalElem):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction, AlgElem)):
            return LocalElem.constant(self.ring, other, self.modulus)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, x in enumerate(b):
            out[k] = out[k] + x
        return LocalElem(self.ring, out, self.modulus)

    __radd__ = __add__

    def __neg__(self):
        return LocalElem(self.ring, [-a for a in self.coeffs], self.modulus)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return LocalElem.zero(self.ring, self.modulus)
            return LocalElem(self.ring, [a * other for a in self.coeffs], self.modulus)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = self.modulus
        a, b = self.coeffs, o.coeffs
        if not a or not b:
            return LocalElem.zero(self.ring, n)
        out = [self.ring.zero] * min(n, len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if not x.rep:
                continue
            for j in range(min(len(b), n - i)):
                y = b[j]
                if y.rep:
                    out[i + j] = out[i + j] + x * y
        return LocalElem(self.ring, out, n)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "LocalElem":
        result = LocalElem.constant(self.ring, 1, self.modulus)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def unit_inverse(self) -> "LocalElem":
        """Inverse of an element with valuation 0."""
        a0 = self[0]
        inv0 = a0.inverse()
        n = self.modulus
        out = [inv0]
        for k in range(1, n):
            acc = self.ring.zero
            for i in range(1, min(k, len(self.coeffs) - 1) + 1):
                acc = acc + self.coeffs[i] * out[k - i]
            out.append(-(acc * inv0))
        return LocalElem(self.ring, out, n)

    def shift_down(self, k: int) -> "LocalElem":
        """Divide by t^k, assuming the first k coefficients vanish; the result
        keeps modulus N but is only meaningful modulo t^(N-k)."""
        return LocalElem(self.ring, self.coeffs[k:], self.modulus)

    def shift_up(self, k: int) -> "LocalElem":
        return LocalElem(self.ring, [self.ring.zero] * k + list(self.coeffs), self.modulus)

    def truncate(self, n: int) -> "LocalElem":
        """Keep the coefficients of t^0 .. t^(n-1), same modulus."""
        return LocalElem(self.ring, self.coeffs[:n], self.modulus)

    def with_modulus(self, n: int) -> "LocalElem":
        return LocalElem(self.ring, self.coeffs, n)

    def __eq__(self, other) -> bool:
        if isinstance(other, LocalElem):
            if other.ring != self.ring or other.modulus != self.modulus:
                return False
            return (self - other).is_zero()
        if isinstance(other, (int, Fraction, AlgElem)):
            return (self - other).is_zero()
        return NotImplemented

    __hash__ = None

    # conversions
    def lambda_coefficients(self) -> list[AlgElem]:
        """Coefficients in the λ basis of the stored representative."""
        c = self.ring.gen()
        out: list[AlgElem] = []
        # Horner in (λ - c): acc = acc*(λ - c) + a_k
        for a in reversed(self.coeffs):
            new = [self.ring.zero] * (len(out) + 1)
            for i, b in enumerate(out):
                new[i + 1] = new[i + 1] + b
                new[i] = new[i] - b * c
            new[0] = new[0] + a
            out = new
        return out

    def to_lambda_poly(self) -> Poly:
        """The representative as a rational polynomial in λ (rational c only)."""
        if self.ring.degree != 1:
            raise ValueError("λ-polynomial with rational coefficients needs a rational exponent")
        return Poly([a.rational_value() for a in self.lambda_coefficients()])

    def format(self) -> str:
        if self.ring.degree == 1:
            return self.to_lambda_poly().format("λ")
        parts = []
        for k, a in enumerate(self.coeffs):
            if not a.rep:
                continue
            coef = a.format("c")
            if k == 0:
                parts.append(f"({coef})")
            else:
                mono = "(λ-c)" if k == 1 else f"(λ-c)^{k}"
                parts.append(f"({coef})*{mono}")
        return " + ".join(parts) if parts else "0"

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"LocalElem({self.format()} mod t^{self.modulus})"


def lambda_power(ring: NumberRing, i: int, modulus: int) -> LocalElem:
    """λ^i expanded around c."""
    return LocalElem.from_poly(ring, Poly.monomial(i), modulus)


def local_divide(beta: LocalElem, alpha: LocalElem) -> LocalElem | None:
    """Solve ``alpha * h = beta (mod t^N)``.

    Returns the canonical ``h`` of t-degree below ``N - val(alpha)`` or
    ``None`` when ``val(beta) < val(alpha)`` (in particular when alpha
    vanishes mod t^N and beta does not).
    """
    alpha._check(beta)
    a = alpha.valuation()
    b = beta.valuation()
    if b < a:
        return None
    n = alpha.modulus
    if b == math.inf:
        return LocalElem.zero(alpha.ring, n)
    keep = n - a
    unit = alpha.shift_down(a).truncate(keep).with_modulus(keep)
    num = beta.shift_down(a).truncate(keep).with_modulus(keep)
    h = num * unit.unit_inverse()
    return h.with_modulus(n)

