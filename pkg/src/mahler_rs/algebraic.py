"""Arithmetic in Q[x]/(q) for squarefree q, with dynamic evaluation.

An exponent that is not rational is carried as the class of ``x`` modulo a
squarefree defining polynomial ``q``. The quotient ring is a product of
fields. Whenever a computation needs to know whether an element is zero or
invertible and the answer differs between roots of ``q``, a
:class:`SplitRequired` is raised with a proper factor of ``q``. Callers then
rerun the computation on each factor (:func:`split_evaluate`).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping, TypeVar

from .poly import Poly, is_squarefree, poly_gcd, poly_xgcd

T = TypeVar("T")


class SplitRequired(ArithmeticError):
    """A zero divisor was met in Q[x]/(modulus)."""

    def __init__(self, modulus: Poly, factor: Poly):
        self.modulus = modulus
        self.factor = factor.monic()
        self.cofactor = modulus.exact_div(factor).monic()
        super().__init__(f"zero divisor modulo {modulus.format('x')}: splits as "
                         f"({self.factor.format('x')})({self.cofactor.format('x')})")


class NumberRing:
    """The ring Q[x]/(q) for a monic squarefree ``q``."""

    __slots__ = ("modulus", "_one", "_zero")

    def __init__(self, modulus: Poly):
        if modulus.degree < 1:
            raise ValueError("modulus must be nonconstant")
        self.modulus = modulus.monic()
        self._zero = AlgElem(self, Poly())
        self._one = AlgElem(self, Poly([1]))

    @property
    def degree(self) -> int:
        return self.modulus.degree

    def __eq__(self, other) -> bool:
        return isinstance(other, NumberRing) and self.modulus == other.modulus

    def __hash__(self) -> int:
        return hash(("NumberRing", self.modulus))

    def __repr__(self) -> str:
        return f"NumberRing({self.modulus.format('x')})"

    @property
    def zero(self) -> "AlgElem":
        return self._zero

    @property
    def one(self) -> "AlgElem":
        return self._one

    def gen(self) -> "AlgElem":
        return self(Poly.x())

    def __call__(self, value) -> "AlgElem":
        if isinstance(value, AlgElem):
            if value.ring is not self and value.ring != self:
                raise ValueError("element belongs to another ring")
            return value
        if isinstance(value, Poly):
            return AlgElem(self, value % self.modulus)
        return AlgElem(self, Poly([value]))

    def eval_poly(self, f: Poly) -> "AlgElem":
        """``f(x)`` reduced modulo q."""
        return AlgElem(self, f % self.modulus)


class AlgElem:
    """Element of :class:`NumberRing`, represented by its reduced polynomial."""

    __slots__ = ("ring", "rep")

    def __init__(self, ring: NumberRing, rep: Poly):
        self.ring = ring
        self.rep = rep

    def _lift(self, other) -> Poly | None:
        if isinstance(other, AlgElem):
            return other.rep
        if isinstance(other, (int, Fraction)):
            return Poly([other])
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return AlgElem(self.ring, self.rep + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return AlgElem(self.ring, self.rep - o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return AlgElem(self.ring, o - self.rep)

    def __neg__(self):
        return AlgElem(self.ring, -self.rep)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return AlgElem(self.ring, self.rep * other)
        o = self._lift(other)
        if o is None:
            return NotImplemented
        prod = self.rep * o
        if prod.degree >= self.ring.degree:
            prod = prod % self.ring.modulus
        return AlgElem(self.ring, prod)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        """Exact zero test; splits when the element vanishes at some but not
        all roots of the modulus."""
        if not self.rep:
            return True
        if self.rep.degree == 0:
            return False
        g = poly_gcd(self.rep, self.ring.modulus)
        if g.degree == 0:
            return False
        raise SplitRequired(self.ring.modulus, g)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def inverse(self) -> "AlgElem":
        if not self.rep:
            raise ZeroDivisionError("inverse of zero in Q[x]/(q)")
        if self.rep.degree == 0:
            return AlgElem(self.ring, Poly([1 / self.rep.lc]))
        g, s, _ = poly_xgcd(self.rep, self.ring.modulus)
        if g.degree > 0:
            if g == self.ring.modulus:
                raise ZeroDivisionError("inverse of zero in Q[x]/(q)")
            raise SplitRequired(self.ring.modulus, g)
        return AlgElem(self.ring, s % self.ring.modulus)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return AlgElem(self.ring, self.rep * (1 / Fraction(other)))
        if isinstance(other, AlgElem):
            return self * other.inverse()
        return NotImplemented

    def __eq__(self, other) -> bool:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return (self - AlgElem(self.ring, o)).is_zero()

    def __hash__(self):
        raise TypeError("AlgElem is unhashable (equality may split the ring)")

    def rational_value(self) -> Fraction | None:
        """The element as a rational number, when its representative is constant."""
        if self.rep.degree <= 0:
            return self.rep[0]
        return None

    def format(self, var: str = "c") -> str:
        if self.rep.degree <= 0:
            return str(self.rep[0])
        return self.rep.format(var)

    def __repr__(self) -> str:
        return f"AlgElem({self.format()} mod {self.ring.modulus.format('x')})"


@dataclass(frozen=True)
class ExponentClass:
    """All roots of a squarefree ``defining`` polynomial, treated together.

    ``multiplicities[j]`` is the common multiplicity ``m_{c,j}`` of every
    root as a root of the j-th characteristic polynomial (slopes are indexed
    from 1). ``offsets[j]`` is ``s_{c,j} = sum_{k<j} m_{c,k}``.
    """

    defining: Poly
    multiplicities: Mapping[int, int]
    offsets: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self):
        q = self.defining
        if q.degree < 1 or q.lc != 1:
            raise ValueError("defining polynomial must be monic and nonconstant")
        if not is_squarefree(q):
            raise ValueError(f"defining polynomial {q} is not squarefree")
        if q[0] == 0:
            raise ValueError("exponents are nonzero: defining(0) must not vanish")
        mults = dict(sorted(self.multiplicities.items()))
        object.__setattr__(self, "multiplicities", mults)
        offs, acc = {}, 0
        for j in sorted(mults):
            offs[j] = acc
            acc += mults[j]
        if self.offsets and dict(self.offsets) != offs:
            raise ValueError("offsets disagree with multiplicities")
        object.__setattr__(self, "offsets", offs)

    def __hash__(self):
        return hash((self.defining, tuple(self.multiplicities.items())))

    @property
    def degree(self) -> int:
        return self.defining.degree

    @property
    def ring(self) -> NumberRing:
        return _ring_for(self.defining)

    def m(self, j: int) -> int:
        return self.multiplicities.get(j, 0)

    def s(self, j: int) -> int:
        return sum(mult for k, mult in self.multiplicities.items() if k < j)

    def modulus(self, j: int) -> int:
        """``s_{c,j} + m_{c,j}``: the power of (λ - c) used for slope j."""
        return self.s(j) + self.m(j)

    def slopes(self) -> list[int]:
        return [j for j, mult in self.multiplicities.items() if mult > 0]

    def rational_root(self) -> Fraction | None:
        if self.defining.degree == 1:
            return -self.defining[0]
        return None

    def restrict(self, factor: Poly) -> "ExponentClass":
        """The sub-class of roots of ``factor`` (a divisor of ``defining``)."""
        factor = factor.monic()
        if self.defining % factor:
            raise ValueError("restriction factor does not divide the defining polynomial")
        return ExponentClass(factor, dict(self.multiplicities))

    def label(self) -> str:
        root = self.rational_root()
        if root is not None:
            return f"c={root}"
        return f"roots of {self.defining.format('λ')}"

    def sort_key(self):
        first = min(self.slopes(), default=0)
        return (first, self.degree, self.defining.coeffs)


_RING_CACHE: dict[Poly, NumberRing] = {}


def _ring_for(q: Poly) -> NumberRing:
    ring = _RING_CACHE.get(q)
    if ring is None:
        ring = _RING_CACHE[q] = NumberRing(q)
    return ring


def split_evaluate(cls: ExponentClass, fn: Callable[[ExponentClass], T],
                   max_depth: int = 64) -> list[tuple[ExponentClass, T]]:
    """Run ``fn(cls)``; on :class:`SplitRequired` rerun on each factor.

    Returns one ``(refined class, result)`` pair per branch, in the order of
    the factors found (factor first, cofactor second).
    """
    if max_depth <= 0:
        raise RuntimeError("dynamic evaluation did not converge")
    try:
        return [(cls, fn(cls))]
    except SplitRequired as exc:
        if exc.modulus != cls.defining:
            raise
        out = []
        for piece in (exc.factor, exc.cofactor):
            out.extend(split_evaluate(cls.restrict(piece), fn, max_depth - 1))
        return out
