from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mahler_rs.algebraic import ExponentClass, NumberRing, SplitRequired, split_evaluate
from mahler_rs.local import LocalElem, local_divide
from mahler_rs.poly import Poly

SQRT2 = NumberRing(Poly([-2, 0, 1]))      # Q[x]/(x^2 - 2)
SPLIT = NumberRing(Poly.from_roots([1, 2]))  # Q[x]/((x-1)(x-2)), not a field
RATIONAL = NumberRing(Poly([-1, 1]))      # c = 1

small = st.fractions(min_value=-4, max_value=4, max_denominator=3)


def test_number_ring_arithmetic():
    r = SQRT2.gen()
    assert r * r == 2
    assert (r + 1) * (r - 1) == 1
    inv = (r + 1).inverse()
    assert inv * (r + 1) == 1
    assert inv.rep == Poly([-1, 1])  # 1/(√2+1) = √2-1


def test_zero_divisor_requests_split():
    x = SPLIT.gen()
    with pytest.raises(SplitRequired) as exc:
        (x - 1).is_zero()
    assert exc.value.factor.degree == 1
    with pytest.raises(SplitRequired):
        (x - 2).inverse()
    with pytest.raises(ZeroDivisionError):
        SPLIT.zero.inverse()


def test_algelem_is_unhashable():
    with pytest.raises(TypeError):
        hash(SQRT2.one)


def test_split_evaluate_branches():
    cls = ExponentClass(Poly.from_roots([1, 2]), {1: 1})

    def probe(k):
        return (k.ring.gen() - 1).is_zero()

    branches = split_evaluate(cls, probe)
    assert sorted((k.rational_root(), ans) for k, ans in branches) == [(1, True), (2, False)]


def test_exponent_class_offsets():
    cls = ExponentClass(Poly([-1, 1]), {1: 1, 3: 2})
    assert cls.s(1) == 0 and cls.s(3) == 1 and cls.modulus(3) == 3
    assert cls.slopes() == [1, 3]
    assert cls.label() == "c=1"
    with pytest.raises(ValueError):
        ExponentClass(Poly([0, 1]), {1: 1})  # exponents are nonzero
    with pytest.raises(ValueError):
        ExponentClass(Poly([1, 0, 1]) ** 2, {1: 1})  # not squarefree


@given(st.lists(small, min_size=1, max_size=5), st.integers(1, 5))
def test_from_poly_round_trip(coeffs, n):
    f = Poly(coeffs)
    x = LocalElem.from_poly(RATIONAL, f, n)
    # to_lambda_poly gives the representative of degree < n
    back = x.to_lambda_poly()
    diff = f - back
    assert diff % Poly.from_roots([1] * n) == Poly()


@given(st.lists(small, min_size=1, max_size=4).filter(lambda c: c[0] != 0), st.integers(1, 5))
def test_unit_inverse(coeffs, n):
    x = LocalElem(SQRT2, [SQRT2(c) for c in coeffs], n)
    assert x * x.unit_inverse() == 1


def test_local_divide():
    n = 3
    t = LocalElem.t_power(RATIONAL, 1, n)
    alpha = t * (t + 2)               # valuation 1
    beta = t * t * 5 + t * 4          # valuation 1
    h = local_divide(beta, alpha)
    assert (alpha * h - beta).is_zero()
    assert h.degree() <= n - 1 - 1
    assert local_divide(t, t * t) is None
    zero_alpha = LocalElem.t_power(RATIONAL, 3, n)  # vanishes mod t^3
    assert local_divide(t, zero_alpha) is None


def test_modulus_mismatch():
    a = LocalElem.constant(RATIONAL, 1, 2)
    b = LocalElem.constant(RATIONAL, 1, 3)
    with pytest.raises(ValueError):
        a + b
    assert a != b


def test_format():
    t = LocalElem.t_power(RATIONAL, 1, 2)
    assert t.format() == "λ - 1"
    s2 = LocalElem.t_power(SQRT2, 1, 2) + LocalElem.constant(SQRT2, Fraction(1, 2), 2)
    assert "(λ-c)" in s2.format()
