"""Dense univariate polynomials over Q.

Coefficients are :class:`fractions.Fraction`, stored lowest degree first.
Besides the ring operations this module carries the squarefree machinery
used to extract exponents from characteristic polynomials.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floating-point coefficients are not allowed")
    return Fraction(x)


class Poly:
    """Immutable dense polynomial with rational coefficients."""

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Iterable = ()):
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)
        self._hash = None

    # construction helpers
    @classmethod
    def constant(cls, c) -> "Poly":
        return cls([c])

    @classmethod
    def monomial(cls, degree: int, c=1) -> "Poly":
        return cls([0] * degree + [c])

    @classmethod
    def x(cls) -> "Poly":
        return cls([0, 1])

    @classmethod
    def from_roots(cls, roots: Sequence) -> "Poly":
        out = cls([1])
        for r in roots:
            out = out * cls([-_frac(r), 1])
        return out

    # basic queries
    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    @property
    def lc(self) -> Fraction:
        if not self.coeffs:
            return Fraction(0)
        return self.coeffs[-1]

    def __getitem__(self, k: int) -> Fraction:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    def trailing_degree(self) -> int:
        """Lowest power of the variable with a nonzero coefficient."""
        for k, c in enumerate(self.coeffs):
            if c:
                return k
        raise ValueError("zero polynomial has no trailing degree")

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Poly([other]).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.coeffs)
        return self._hash

    # ring operations
    @staticmethod
    def _coerce(other) -> "Poly":
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly([other])
        raise TypeError(f"cannot coerce {type(other).__name__} to Poly")

    def __add__(self, other) -> "Poly":
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, c in enumerate(b):
            out[k] += c
        return Poly(out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other) -> "Poly":
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            return Poly([c * other for c in self.coeffs])
        if not isinstance(other, Poly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result, base = Poly([1]), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other: "Poly") -> tuple["Poly", "Poly"]:
        other = self._coerce(other)
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db = other.degree
        inv_lc = 1 / other.lc
        if len(rem) - 1 < db:
            return Poly(), self
        quo = [Fraction(0)] * (len(rem) - db)
        for k in range(len(rem) - 1, db - 1, -1):
            c = rem[k]
            if c:
                q = c * inv_lc
                quo[k - db] = q
                for i, b in enumerate(other.coeffs):
                    rem[k - db + i] -= q * b
        return Poly(quo), Poly(rem[:db])

    def __floordiv__(self, other) -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other) -> "Poly":
        return divmod(self, other)[1]

    def exact_div(self, other: "Poly") -> "Poly":
        q, r = divmod(self, other)
        if r:
            raise ArithmeticError("polynomial division is not exact")
        return q

    # calculus and evaluation
    def derivative(self) -> "Poly":
        return Poly([k * c for k, c in enumerate(self.coeffs)][1:])

    def __call__(self, x):
        acc = 0 * x if not isinstance(x, (int, Fraction)) else Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def monic(self) -> "Poly":
        if not self:
            return self
        inv = 1 / self.lc
        return Poly([c * inv for c in self.coeffs])

    def shift(self, n: int) -> "Poly":
        """Multiply by ``x**n`` (``n`` may be negative if divisible)."""
        if n >= 0:
            return Poly([0] * n + list(self.coeffs))
        if any(self.coeffs[:-n]):
            raise ArithmeticError("shift would drop nonzero coefficients")
        return Poly(self.coeffs[-n:])

    def taylor_coefficients(self) -> list["Poly"]:
        """Polynomials ``P_k`` with ``P(x + t) = sum_k P_k(x) t**k``."""
        out = []
        d = self
        fact = 1
        k = 0
        while d:
            out.append(d * Fraction(1, fact))
            k += 1
            fact *= k
            d = d.derivative()
        return out

    # printing
    def format(self, var: str = "λ") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if k == 0:
                body = str(a)
            else:
                mono = var if k == 1 else f"{var}^{k}"
                body = mono if a == 1 else f"{a}*{mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        s = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"Poly({self.format('x')})"


ZERO = Poly()
ONE = Poly([1])
X = Poly([0, 1])


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd (zero only if both inputs are zero)."""
    while b:
        a, b = b, a % b
    return a.monic()


def poly_xgcd(a: Poly, b: Poly) -> tuple[Poly, Poly, Poly]:
    """Return ``(g, s, t)`` with ``s*a + t*b = g`` and ``g`` monic."""
    r0, r1 = a, b
    s0, s1 = ONE, ZERO
    t0, t1 = ZERO, ONE
    while r1:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if not r0:
        return r0, s0, t0
    inv = 1 / r0.lc
    return r0 * inv, s0 * inv, t0 * inv


def is_squarefree(f: Poly) -> bool:
    return poly_gcd(f, f.derivative()).degree == 0


def squarefree_decomposition(f: Poly) -> list[tuple[Poly, int]]:
    """Yun's algorithm.

    Returns monic, squarefree, pairwise coprime ``g_i`` with distinct
    multiplicities such that ``f = lc(f) * prod g_i**m_i``. Sorted by
    multiplicity.
    """
    if not f:
        raise ValueError("squarefree decomposition of the zero polynomial")
    if f.degree == 0:
        return []
    f = f.monic()
    out = []
    fp = f.derivative()
    a = poly_gcd(f, fp)
    b = f.exact_div(a)
    c = fp.exact_div(a)
    d = c - b.derivative()
    k = 1
    while b.degree > 0:
        g = poly_gcd(b, d)
        if g.degree > 0:
            out.append((g, k))
        b = b.exact_div(g)
        c = d.exact_div(g)
        d = c - b.derivative()
        k += 1
    return out


class NonUniformMultiplicity(ArithmeticError):
    """Roots of ``q`` divide ``f`` with different multiplicities."""

    def __init__(self, q: Poly, factor: Poly):
        super().__init__(f"roots of {q} have unequal multiplicities; split off {factor}")
        self.q = q
        self.factor = factor


def factor_multiplicity(f: Poly, q: Poly) -> int:
    """Largest ``k`` with ``q**k | f`` provided every root of ``q`` has the
    same multiplicity in ``f``.

    When the multiplicities differ, :class:`NonUniformMultiplicity` carries a
    proper factor of ``q`` so the caller can split and recurse.
    """
    if q.degree < 1:
        raise ValueError("factor_multiplicity needs a nonconstant q")
    if not f:
        raise ValueError("multiplicity in the zero polynomial is unbounded")
    k = 0
    while True:
        g = poly_gcd(f, q)
        if g.degree == 0:
            return k
        if g.degree < q.degree:
            raise NonUniformMultiplicity(q, g)
        f = f.exact_div(q)
        k += 1


def gcd_free_basis(polys: Iterable[Poly]) -> list[Poly]:
    """Pairwise coprime monic squarefree polynomials generating the same
    root sets as the (squarefree) inputs."""
    basis = [p.monic() for p in polys if p.degree > 0]
    changed = True
    while changed:
        changed = False
        for i in range(len(basis)):
            for j in range(i + 1, len(basis)):
                a, b = basis[i], basis[j]
                g = poly_gcd(a, b)
                if g.degree == 0:
                    continue
                rest = [basis[k] for k in range(len(basis)) if k not in (i, j)]
                for piece in (g, a.exact_div(g), b.exact_div(g)):
                    if piece.degree > 0 and piece not in rest:
                        rest.append(piece)
                basis = rest
                changed = True
                break
            if changed:
                break
    return sorted(basis, key=lambda p: (p.degree, p.coeffs))
