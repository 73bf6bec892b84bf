import random
from fractions import Fraction

import pytest

from helpers import WORKED_EXAMPLE, mixed_equation, parsed, slope_check_passes
from mahler_rs.decision import _pairs
from mahler_rs.equation import normalize_equation
from mahler_rs.local import LocalElem
from mahler_rs.mahler_ops import (apply_L_lambda, monomial_image, omega, pi_map,
                                  seed_coefficient, seed_from_charpoly, window_bound)
from mahler_rs.newton import exponents, newton_polygon
from mahler_rs.poly import Poly
from mahler_rs.puiseux import PuiseuxPoly
from mahler_rs.solver import (FailedGrid, Found, TruncatedSolution,
                              find_reduced_truncated_solution, grid_size,
                              solve_with_splitting, verify_conditions)


@pytest.fixture(scope="module")
def worked_example():
    eq = normalize_equation(parsed(WORKED_EXAMPLE))
    np_ = newton_polygon(eq)
    (cls,) = exponents(np_)
    return eq, np_, cls


def lam_poly(x: LocalElem) -> Poly:
    return x.to_lambda_poly()


def test_pi_and_omega_are_inverse(worked_example):
    eq, _, _ = worked_example
    for v in [Fraction(-3), Fraction(-2), Fraction(-5, 2), Fraction(1)]:
        assert pi_map(eq, omega(eq, v)) == v
    assert pi_map(eq, -2) == -2 and pi_map(eq, 0) == 0


def test_monomial_image(worked_example):
    eq, _, _ = worked_example
    img = monomial_image(eq, -3)
    # λ^2 z^-4 - λ(z^-4 + z^-3 + z) + z^-3 + z^-2
    assert img[-4] == Poly([0, -1, 1])
    assert img[-3] == Poly([1, -1])
    assert img[-2] == Poly([1])
    assert img[1] == Poly([0, -1])
    assert set(monomial_image(eq, -3, -3, inclusive=True)) == {-4, -3}


def test_seeds(worked_example):
    eq, np_, cls = worked_example
    assert lam_poly(seed_coefficient(eq, np_, cls, 1)) == Poly([-1])
    assert lam_poly(seed_coefficient(eq, np_, cls, 2)) == Poly([-1, 1])
    for j in (1, 2):
        assert seed_coefficient(eq, np_, cls, j) == seed_from_charpoly(np_, cls, j)


def test_worked_example_trace(worked_example):
    eq, np_, cls = worked_example
    t1 = find_reduced_truncated_solution(eq, np_, cls, 1)
    assert t1.found and not t1.steps
    t2 = find_reduced_truncated_solution(eq, np_, cls, 2)
    assert len(t2.steps) == 1
    step = t2.steps[0]
    assert step.v == -2
    assert lam_poly(step.alpha) == Poly([1, -1])
    assert lam_poly(step.beta) == Poly([-1, 1])
    assert lam_poly(step.h) == Poly([-1])
    assert isinstance(t2.outcome, Found)
    f = t2.outcome.f
    assert f.support() == [-3, -2]
    assert lam_poly(f[-3]) == Poly([-1, 1]) and lam_poly(f[-2]) == Poly([1])
    assert verify_conditions(eq, np_, t2.solution()).all_pass


def test_debug_recompute_agrees(worked_example):
    eq, np_, cls = worked_example
    t = find_reduced_truncated_solution(eq, np_, cls, 2, debug_recompute=True)
    assert t.found


def test_incremental_g_matches_recomputation_on_random_equations():
    rng = random.Random(3)
    done = 0
    while done < 40:
        eq = mixed_equation(rng)
        if not slope_check_passes(eq):
            continue
        eq = normalize_equation(eq)
        np_ = newton_polygon(eq)
        for j, cls in _pairs(exponents(np_)):
            for _, t in solve_with_splitting(eq, np_, cls, j, debug_recompute=True):
                assert len(t.steps) <= grid_size(np_, j)
        done += 1


def test_verify_conditions_rejects_tampering(worked_example):
    eq, np_, cls = worked_example
    t = find_reduced_truncated_solution(eq, np_, cls, 2)
    f = t.outcome.f
    ring = cls.ring
    bad_seed = PuiseuxPoly({-3: f[-3] * 2, -2: f[-2]})
    rep = verify_conditions(eq, np_, TruncatedSolution(bad_seed, cls, 2))
    assert not rep["C3"]
    off_grid = f + PuiseuxPoly({Fraction(-1, 2): LocalElem.constant(ring, 1, 2)})
    rep = verify_conditions(eq, np_, TruncatedSolution(off_grid, cls, 2))
    assert not rep["C2"]
    shifted = PuiseuxPoly({-2: f[-3]})
    rep = verify_conditions(eq, np_, TruncatedSolution(shifted, cls, 2))
    # (λ-1) z^-2 meets C1 mod (λ-1)^2 but starts at the wrong exponent
    assert rep["C1"] and not rep["C4"]


def test_apply_L_lambda_window(worked_example):
    eq, np_, cls = worked_example
    ring = cls.ring
    t = LocalElem.t_power(ring, 1, 2)
    f = PuiseuxPoly({-3: t})
    g = apply_L_lambda(eq, f, window_bound(eq, np_), inclusive=True)
    # (λ - 1)(z^-2 - z) mod (λ - 1)^2, seen up to z^-2
    assert g.support() == [-2]
    assert g[-2].to_lambda_poly() == Poly([-1, 1])


def test_failed_grid_on_alpha2_inverse():
    eq = normalize_equation(parsed("z^8*f(z) - (z^2+z^3+2*z^7)*f(z^2) + (1+z)*f(z^4) = 0"))
    np_ = newton_polygon(eq)
    (cls,) = exponents(np_)
    t = find_reduced_truncated_solution(eq, np_, cls, 2)
    assert isinstance(t.outcome, FailedGrid) and t.outcome.v == Fraction(7, 2)
