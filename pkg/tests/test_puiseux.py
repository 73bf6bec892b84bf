import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mahler_rs.errors import PrecisionError
from mahler_rs.puiseux import PuiseuxPoly, cld, mahler_substitute, substitute_power, valuation

exps = st.fractions(min_value=-4, max_value=6, max_denominator=3)
coefs = st.integers(-3, 3).map(Fraction)
series = st.dictionaries(exps, coefs, max_size=5).map(PuiseuxPoly)

H = Fraction(1, 2)


def test_construction_drops_zeros_and_sorts():
    f = PuiseuxPoly({2: 1, H: 3, 1: 0})
    assert f.support() == [H, 2]
    assert f.valuation() == H and f.cld() == 3
    assert f.ramification == 2
    assert valuation(PuiseuxPoly()) == math.inf


def test_truncated_reads():
    f = PuiseuxPoly({0: 1, 1: 2}, truncation_order=3)
    assert f[1] == 2 and f[2] == 0
    with pytest.raises(PrecisionError):
        f[3]
    assert f.valuation() == 0
    with pytest.raises(PrecisionError):
        PuiseuxPoly({}, truncation_order=2).valuation()


def test_truncation_propagates():
    f = PuiseuxPoly({0: 1}, 3)
    g = PuiseuxPoly({1: 1})
    assert (f * g).truncation_order == 4
    assert (f + g).truncation_order == 3
    assert mahler_substitute(f, 2).truncation_order == 6


def test_mahler_substitute():
    f = PuiseuxPoly({H: 1, 1: -2})
    assert mahler_substitute(f, 3) == PuiseuxPoly({Fraction(3, 2): 1, 3: -2})
    with pytest.raises(ValueError):
        mahler_substitute(f, 1)
    assert substitute_power(f, 2) == PuiseuxPoly({1: 1, 2: -2})


@given(series, series, series)
def test_ring_laws(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == PuiseuxPoly()


@given(series.filter(bool), series.filter(bool))
def test_valuation_and_cld_multiplicative(a, b):
    assert valuation(a * b) == valuation(a) + valuation(b)
    assert cld(a * b) == cld(a) * cld(b)


@given(series, st.integers(2, 5))
def test_substitution_is_a_ring_map(a, p):
    b = PuiseuxPoly({1: 1, 0: 2})
    assert mahler_substitute(a * b, p) == mahler_substitute(a, p) * mahler_substitute(b, p)


def test_grid_round_trip():
    f = PuiseuxPoly({Fraction(-1, 3): 2, Fraction(2, 3): 1})
    d, grid = f.to_grid()
    assert d == 3 and grid == {-1: 2, 2: 1}
    assert PuiseuxPoly.from_grid(d, grid) == f


def test_format():
    f = PuiseuxPoly({0: 1, H: -1, 2: Fraction(3, 4)}, 3)
    assert f.format() == "1 - z^(1/2) + 3/4*z^2 + O(z^3)"
