import json
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from helpers import WORKED_EXAMPLE, random_equation
from mahler_rs.errors import InvalidEquation
from mahler_rs.parser import (ParseError, equation_document, parse_document, parse_equation,
                              parse_text)
from mahler_rs.puiseux import PuiseuxPoly


def test_worked_example_one_liner():
    eq = parse_equation(WORKED_EXAMPLE)
    assert eq.p == 2 and eq.order == 2
    assert eq.coefficients[0] == PuiseuxPoly({0: 1, 1: 1})
    assert eq.coefficients[1] == PuiseuxPoly({2: -1, 3: -1, 7: -1})
    assert eq.coefficients[2] == PuiseuxPoly({8: 1})


def test_p_is_inferred_and_checked():
    assert parse_equation("f(z^9) + f(z)").p == 9
    assert parse_equation("f(z^9) + f(z^3) + f(z)").p == 3
    with pytest.raises(ParseError, match="p=2"):
        parse_equation("f(z^3) + f(z) = 0 ; p=2")
    with pytest.raises(ParseError):
        parse_equation("f(z) + 2*f(z) = 0")


def test_exponent_forms_and_truncation():
    eq = parse_equation("z^(1/2)*f(z^2) + (z^-1 + 3/4*z^{2} + O(z^3))*f(z) = 0")
    assert eq.coefficients[1] == PuiseuxPoly({Fraction(1, 2): 1})
    a0 = eq.coefficients[0]
    assert a0.truncation_order == 3 and a0[2] == Fraction(3, 4) and a0[-1] == 1


@pytest.mark.parametrize("text, column", [
    ("0.5*f(z^2) + f(z) = 0", 0),
    ("f(z^2) + 1.25*f(z) = 0", 9),
])
def test_floats_rejected_with_position(text, column):
    with pytest.raises(ParseError) as exc:
        parse_equation(text)
    assert exc.value.position == column
    assert "floating-point" in str(exc.value)


def test_syntax_errors_have_positions():
    with pytest.raises(ParseError) as exc:
        parse_equation("f(z^2) + (1+z*f(z) = 0")
    assert exc.value.position is not None
    with pytest.raises(ParseError):
        parse_equation("f(z^2)*f(z) = 0")
    with pytest.raises(ParseError):
        parse_equation("(1 + z^5 + O(z^2))*f(z^2) + f(z)")


def test_zero_coefficients_rejected():
    with pytest.raises(InvalidEquation, match="a_0 = 0"):
        parse_equation("f(z^2) + 0*f(z) = 0")
    doc = {"p": 2, "coefficients": [{"terms": []}, {"terms": [[0, 1, "1"]]}]}
    with pytest.raises(InvalidEquation, match="a_0 = 0"):
        parse_document(doc)


def test_document_validation():
    ok = {"p": 2, "coefficients": [{"terms": [[0, 1, "-3/4"]]}, {"terms": [[1, 2, "1"]]}]}
    eq = parse_document(ok)
    assert eq.coefficients[0] == PuiseuxPoly({0: Fraction(-3, 4)})
    bad = json.loads(json.dumps(ok))
    bad["coefficients"][0]["terms"][0][2] = "0.5"
    with pytest.raises(ParseError):
        parse_document(bad)
    bad["coefficients"][0]["terms"][0] = [0, 0, "1"]
    with pytest.raises(ParseError, match="denominator"):
        parse_document(bad)
    with pytest.raises(ParseError, match="floating-point"):
        parse_text('{"p": 2, "coefficients": [{"terms": [[0.5, 1, "1"]]}]}')


@given(st.integers(0, 10 ** 6))
def test_document_and_one_liner_agree(seed):
    import random
    eq = random_equation(random.Random(seed))
    via_json = parse_text(json.dumps(equation_document(eq)))
    via_text = parse_equation(eq.format())
    assert via_json == eq and via_text == eq
