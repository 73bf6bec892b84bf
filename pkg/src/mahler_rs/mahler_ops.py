"""The operator L_lambda, the pi map and the Frobenius seed r_{c,j}."""

from __future__ import annotations

from fractions import Fraction

from .algebraic import ExponentClass
from .equation import MahlerEquation
from .errors import PrecisionError
from .local import LocalElem
from .newton import NewtonPolygon
from .poly import Poly
from .puiseux import PuiseuxPoly


def pi_map(eq: MahlerEquation, w) -> Fraction:
    """pi(w) = max_i (w - val a_i) / p^i, the exponent v with val L_lambda(z^v) = w."""
    w = Fraction(w)
    best = None
    for i, a in enumerate(eq.coefficients):
        if a.terms:
            cand = (w - a.valuation()) / eq.p ** i
            if best is None or cand > best:
                best = cand
    return best


def omega(eq: MahlerEquation, v) -> Fraction:
    """val_z L_lambda(z^v) = min_i (val a_i + p^i v); inverse of :func:`pi_map`."""
    v = Fraction(v)
    return min(a.valuation() + eq.p ** i * v
               for i, a in enumerate(eq.coefficients) if a.terms)


def _within(e, bound, inclusive: bool) -> bool:
    if bound is None:
        return True
    return e <= bound if inclusive else e < bound


def _check_precision(eq: MahlerEquation, i: int, v, bound, inclusive: bool):
    a = eq.coefficients[i]
    if a.truncation_order is None or bound is None:
        return
    need = bound - eq.p ** i * v  # exponents of a_i that land inside the window
    ok = a.truncation_order > need if inclusive else a.truncation_order >= need
    if not ok:
        how = f"through z^{need} inclusive" if inclusive else f"below z^{need}"
        raise PrecisionError(
            f"a_{i} is known only below z^{a.truncation_order} but terms {how} "
            f"are required", coefficient=i, required=need)


def monomial_image(eq: MahlerEquation, v, z_bound=None, inclusive: bool = False
                   ) -> dict[Fraction, Poly]:
    """L_lambda(z^v) as {exponent: polynomial in lambda}, restricted to the window."""
    v = Fraction(v)
    out: dict[Fraction, Poly] = {}
    for i, a in enumerate(eq.coefficients):
        _check_precision(eq, i, v, z_bound, inclusive)
        shift = eq.p ** i * v
        for e, c in a.terms.items():
            x = e + shift
            if not _within(x, z_bound, inclusive):
                continue
            term = Poly.monomial(i, c)
            out[x] = out[x] + term if x in out else term
    return {e: out[e] for e in sorted(out) if out[e]}


def apply_L(eq: MahlerEquation, f: PuiseuxPoly, z_bound=None, inclusive: bool = False
            ) -> PuiseuxPoly:
    """L(f) = sum_i a_i f(z^{p^i}) for f with scalar (or generic) coefficients."""
    acc: dict[Fraction, object] = {}
    for v, c in f.terms.items():
        for i, a in enumerate(eq.coefficients):
            _check_precision(eq, i, v, z_bound, inclusive)
            shift = eq.p ** i * v
            for e, ac in a.terms.items():
                x = e + shift
                if _within(x, z_bound, inclusive):
                    t = c * ac
                    acc[x] = acc[x] + t if x in acc else t
    order = z_bound if (z_bound is not None and not inclusive) else None
    return PuiseuxPoly(acc, order)


def local_image(eq: MahlerEquation, cls: ExponentClass, v, modulus: int, z_bound=None,
                inclusive: bool = False) -> PuiseuxPoly:
    """L_lambda(z^v) with coefficients expanded in K_q[[lambda - c]] / (lambda - c)^N."""
    ring = cls.ring
    img = monomial_image(eq, v, z_bound, inclusive)
    return PuiseuxPoly({e: LocalElem.from_poly(ring, P, modulus) for e, P in img.items()})


def apply_L_lambda(eq: MahlerEquation, f: PuiseuxPoly, z_bound=None,
                   inclusive: bool = False) -> PuiseuxPoly:
    """sum_i a_i lambda^i f(z^{p^i}) for f with :class:`LocalElem` coefficients.

    Only exponents below ``z_bound`` (or up to it when ``inclusive``) are
    computed. With an exclusive bound the result carries it as its
    truncation order.
    """
    terms = list(f.terms.items())
    if not terms:
        return PuiseuxPoly((), None if inclusive else z_bound)
    sample = terms[0][1]
    ring, modulus = sample.ring, sample.modulus
    acc: dict[Fraction, LocalElem] = {}
    for v, c in terms:
        img = monomial_image(eq, v, z_bound, inclusive)
        for e, P in img.items():
            t = c * LocalElem.from_poly(ring, P, modulus)
            acc[e] = acc[e] + t if e in acc else t
    return PuiseuxPoly(acc, None if inclusive else z_bound)


def theta(np_: NewtonPolygon, j: int) -> Fraction:
    return np_.edge(j).theta


def window_bound(eq: MahlerEquation, np_: NewtonPolygon) -> Fraction:
    """val a_0 - mu_1: C1 asks every exponent up to this one to vanish."""
    return eq.coefficients[0].valuation() - np_.edges[0].slope


def seed_coefficient(eq: MahlerEquation, np_: NewtonPolygon, cls: ExponentClass, j: int
                     ) -> LocalElem:
    """r_{c,j} reduced mod (lambda - c)^{s+m}.

    Uses the product formula: lambda^{-(r_1+...+r_{j-1})} times the Vieta
    constant prod_{i<=j} prod_k (-c_{i,k}) / cld a_0, times (lambda - c)^s,
    divided by prod_{c' != c} (lambda - c')^{m_{c',j}}.
    """
    ring = cls.ring
    n = cls.modulus(j)
    m = cls.m(j)
    s = cls.s(j)
    if m == 0:
        raise ValueError(f"{cls.label()} is not attached to slope {j}")
    const = Fraction(1)
    for edge in np_.edges[:j]:
        part = edge.stripped_charpoly()
        const *= part[0] / part.lc
    const /= eq.coefficients[0].cld()

    left = np_.edge(j).left
    lam = LocalElem.from_poly(ring, Poly.x(), n)
    lam_inv_power = lam.unit_inverse() ** left

    part = np_.edge(j).stripped_charpoly()
    expanded = LocalElem.from_poly(ring, part * (1 / part.lc), n + m)
    for k in range(m):
        if not expanded[k].is_zero():
            raise ArithmeticError(f"{cls.label()} is not a root of multiplicity {m}")
    others = expanded.shift_down(m).truncate(n).with_modulus(n)

    t_s = LocalElem.t_power(ring, s, n)
    return lam_inv_power * t_s * others.unit_inverse() * const


def seed_from_charpoly(np_: NewtonPolygon, cls: ExponentClass, j: int) -> LocalElem:
    """(lambda - c)^{s+m} / chi_j(lambda) in the local ring; equal to r_{c,j}."""
    ring = cls.ring
    n, m, s = cls.modulus(j), cls.m(j), cls.s(j)
    chi = LocalElem.from_poly(ring, np_.edge(j).charpoly, n + m)
    unit = chi.shift_down(m).truncate(n).with_modulus(n)
    return LocalElem.t_power(ring, s, n) * unit.unit_inverse()


def required_precision(eq: MahlerEquation, np_: NewtonPolygon) -> list:
    """For each a_i, the exponent through which its terms are needed by the
    truncated-solution search (worst monomial z^{-mu_kappa})."""
    bound = window_bound(eq, np_)
    worst = -np_.edges[-1].slope
    return [bound - eq.p ** i * worst for i in range(eq.order + 1)]

