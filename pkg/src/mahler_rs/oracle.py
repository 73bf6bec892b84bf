"""Independent ground truth for the solver.

``feasibility_oracle`` decides whether C1..C6 admit a solution by writing
them out as one linear system over Q[x]/(q). ``frobenius_prefix`` runs the
series recursion for g_{c,j} over Q(lambda), without any truncation in
lambda.
"""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass
from fractions import Fraction

from sympy import QQ
from sympy.polys.fields import field as frac_field

from .algebraic import AlgElem, ExponentClass, split_evaluate
from .equation import MahlerEquation, normalize_equation
from .errors import MahlerError
from .local import LocalElem
from .mahler_ops import monomial_image, omega, pi_map, seed_coefficient, window_bound
from .newton import NewtonPolygon, newton_polygon
from .poly import Poly, poly_gcd
from .puiseux import PuiseuxPoly
from .solver import TruncatedSolution


# feasibility oracle
@dataclass(frozen=True)
class OracleResult:
    feasible: bool
    witness: TruncatedSolution | None = None
    unknowns: int = 0
    equations: int = 0


def _grid(np_: NewtonPolygon, j: int) -> list[Fraction]:
    d = np_.d
    lo = -np_.edge(j).slope * d
    hi = -np_.edges[0].slope * d
    return [Fraction(k, d) for k in range(int(lo), int(hi) + 1)]


def _coupled_exponents(eq, np_, j, bound):
    """Exponents v of the grid whose images share a window exponent with the
    image of z^{-mu_j}, directly or through other grid exponents.

    Unknowns outside this component only meet homogeneous equations and can
    be set to zero, so they are left out of the system.
    """
    grid = _grid(np_, j)
    start = -np_.edge(j).slope
    images = {v: monomial_image(eq, v, bound, inclusive=True) for v in grid}
    by_exponent = defaultdict(list)
    for v, img in images.items():
        for e in img:
            by_exponent[e].append(v)
    seen_v = {start}
    seen_e = set()
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for e in images[v]:
            if e in seen_e:
                continue
            seen_e.add(e)
            for w in by_exponent[e]:
                if w not in seen_v:
                    seen_v.add(w)
                    queue.append(w)
    return sorted(seen_v), sorted(seen_e), images


def feasibility_oracle(eq: MahlerEquation, np_: NewtonPolygon, cls: ExponentClass, j: int
                       ) -> OracleResult:
    """Decide C1..C6 for (c, j) by exact linear algebra.

    May raise :class:`~mahler_rs.algebraic.SplitRequired`; see
    :func:`oracle_with_splitting`.
    """
    ring = cls.ring
    n = cls.modulus(j)
    start = -np_.edge(j).slope
    bound = window_bound(eq, np_)
    caps = {}
    for k in range(1, j):
        caps[-np_.edge(k).slope] = n - cls.m(k)
    exps, rows_e, images = _coupled_exponents(eq, np_, j, bound)

    seed = seed_coefficient(eq, np_, cls, j)
    local = {v: {e: LocalElem.from_poly(ring, P, n) for e, P in images[v].items()}
             for v in exps}

    columns = [(v, l) for v in exps if v != start for l in range(caps.get(v, n))]
    col_index = {c: i for i, c in enumerate(columns)}

    # one equation per (window exponent e, power l of t)
    system = []
    for e in rows_e:
        fixed = local[start][e] * seed if e in local[start] else None
        for l in range(n):
            row: dict[int, AlgElem] = {}
            for v in exps:
                if v == start or e not in local[v]:
                    continue
                img = local[v][e]
                for l2 in range(caps.get(v, n)):
                    if l - l2 < 0:
                        break
                    coef = img[l - l2]
                    if coef.rep:
                        row[col_index[(v, l2)]] = coef
            rhs = -fixed[l] if fixed is not None else ring.zero
            if row or rhs.rep:
                system.append((row, rhs))

    solution = _solve(system, ring)
    if solution is None:
        return OracleResult(False, None, len(columns), len(system))
    terms = {start: seed}
    for (v, l), i in col_index.items():
        x = solution.get(i)
        if x is not None and x.rep:
            terms[v] = terms.get(v, LocalElem.zero(ring, n)) + LocalElem.t_power(ring, l, n) * x
    witness = TruncatedSolution(PuiseuxPoly(terms), cls, j)
    return OracleResult(True, witness, len(columns), len(system))


def _solve(system, ring) -> dict[int, AlgElem] | None:
    """Gaussian elimination; None when inconsistent, else one solution with
    free variables set to zero."""
    pivots: list[tuple[int, dict, AlgElem]] = []
    by_col: dict[int, int] = {}
    for row, rhs in system:
        row = dict(row)
        while True:
            # earliest pivot first: later pivot rows never mention earlier pivots
            hits = [c for c in row if c in by_col]
            if not hits:
                break
            hit = min(hits, key=by_col.__getitem__)
            factor = row.pop(hit)
            _, prow, prhs = pivots[by_col[hit]]
            for c, a in prow.items():
                if c == hit:
                    continue
                val = row.get(c, ring.zero) - factor * a
                if val.rep:
                    row[c] = val
                else:
                    row.pop(c, None)
            rhs = rhs - factor * prhs
        piv = None
        for c in sorted(row):
            if row[c].is_zero():
                del row[c]
            else:
                piv = c
                break
        if piv is None:
            if not rhs.is_zero():
                return None
            continue
        inv = row[piv].inverse()
        row = {c: a * inv for c, a in row.items() if a.rep}
        row[piv] = ring.one
        by_col[piv] = len(pivots)
        pivots.append((piv, row, rhs * inv))
    values: dict[int, AlgElem] = {}
    for piv, row, rhs in reversed(pivots):
        acc = rhs
        for c, a in row.items():
            if c != piv and c in values:
                acc = acc - a * values[c]
        values[piv] = acc
    return values


def oracle_with_splitting(eq: MahlerEquation, np_: NewtonPolygon, cls: ExponentClass,
                          j: int) -> list[tuple[ExponentClass, OracleResult]]:
    return split_evaluate(cls, lambda k: feasibility_oracle(eq, np_, k, j))


def branches_agree(left: list[tuple[ExponentClass, bool]],
                   right: list[tuple[ExponentClass, bool]]) -> bool:
    """Two branch lists agree when every overlapping pair of branches (their
    defining polynomials share a root) carries the same answer."""
    for ka, a in left:
        for kb, b in right:
            if poly_gcd(ka.defining, kb.defining).degree > 0 and a != b:
                return False
    return True


# Frobenius prefix
class PrefixTooLong(MahlerError):
    """The exponents of g accumulate below the requested order."""


LAMBDA_FIELD, LAMBDA = frac_field("λ", QQ)


def _to_field(P: Poly):
    acc = LAMBDA_FIELD(0)
    for k, c in enumerate(P.coeffs):
        if c:
            acc += QQ(c.numerator, c.denominator) * LAMBDA ** k
    return acc


def _from_sympy_poly(p) -> Poly:
    coeffs: dict[int, Fraction] = {}
    for (k,), c in p.terms():
        coeffs[k] = Fraction(int(c.numerator), int(c.denominator))
    if not coeffs:
        return Poly()
    return Poly([coeffs.get(k, 0) for k in range(max(coeffs) + 1)])


def field_to_pair(x) -> tuple[Poly, Poly]:
    """(numerator, denominator) of an element of Q(lambda)."""
    return _from_sympy_poly(x.numer), _from_sympy_poly(x.denom)


def format_field(x) -> str:
    num, den = field_to_pair(x)
    if den.degree == 0:
        return (num * (1 / den[0])).format("λ")
    return f"({num.format('λ')})/({den.format('λ')})"


@dataclass(frozen=True)
class FrobeniusPrefix:
    """Terms of g_{c,j} below z^order.

    ``unscaled`` holds G with L_lambda(G) = z^theta_j over Q(lambda), so
    g_{c,j} = (lambda - c)^{s+m} G.
    """

    cls: ExponentClass
    j: int
    order: Fraction
    theta: Fraction
    modulus: int
    unscaled: PuiseuxPoly
    steps: int

    def exact(self) -> PuiseuxPoly:
        """g_{c,j} with coefficients in Q(lambda); rational c only."""
        c = self.cls.rational_root()
        if c is None:
            raise ValueError("exact coefficients need a rational exponent")
        factor = (LAMBDA - QQ(c.numerator, c.denominator)) ** self.modulus
        return PuiseuxPoly({v: g * factor for v, g in self.unscaled.terms.items()})

    def reduced_terms(self) -> dict[Fraction, LocalElem]:
        """Every coefficient of g_{c,j} modulo (lambda - c)^{s+m}, zeros included."""
        ring = self.cls.ring
        n = self.modulus
        out = {}
        for v, g in self.unscaled.terms.items():
            num, den = field_to_pair(g)
            room = n + den.degree + 1
            dloc = LocalElem.from_poly(ring, den, room)
            k = dloc.valuation()
            if k > n:
                raise ArithmeticError(f"coefficient of z^{v} has a pole at c")
            unit = dloc.shift_down(k).truncate(n).with_modulus(n)
            out[v] = (LocalElem.from_poly(ring, num, n) * unit.unit_inverse()).shift_up(n - k)
        return out

    def reduced(self) -> PuiseuxPoly:
        return PuiseuxPoly(self.reduced_terms())


def frobenius_prefix(eq: MahlerEquation, cls: ExponentClass, j: int, order,
                     np_: NewtonPolygon | None = None, max_steps: int = 2_000,
                     max_denominator: int = 1024) -> FrobeniusPrefix:
    """Terms of g_{c,j} with exponent below ``order``.

    Recursion: with R = z^theta - L_lambda(G), the next exponent is
    v = pi(val R) and its coefficient cld R / cld L_lambda(z^v).
    Raises :class:`PrefixTooLong` when exponents accumulate below ``order``
    (denominators beyond ``max_denominator`` or more than ``max_steps`` terms).
    """
    eq = eq if eq.is_normalized else normalize_equation(eq)
    np_ = np_ or newton_polygon(eq)
    order = Fraction(order)
    theta = np_.edge(j).theta
    target = omega(eq, order)  # residual must vanish below this exponent
    residual = {theta: LAMBDA_FIELD(1)} if theta < target else {}
    G: dict[Fraction, object] = {}
    steps = 0
    while residual:
        w = min(residual)
        v = pi_map(eq, w)
        if v.denominator > max_denominator:
            raise PrefixTooLong(f"exponent z^{v} needed below z^{order}: the support of g "
                                f"accumulates (not a Puiseux series there)")
        img = monomial_image(eq, v, target)
        alpha = _to_field(img[w])
        coef = residual[w] / alpha
        G[v] = G[v] + coef if v in G else coef
        for e, P in img.items():
            val = residual.get(e, LAMBDA_FIELD(0)) - coef * _to_field(P)
            if val == 0:
                residual.pop(e, None)
            else:
                residual[e] = val
        steps += 1
        if steps > max_steps:
            raise PrefixTooLong(f"prefix recursion did not reach z^{order} within "
                                f"{max_steps} steps; the support of g below that "
                                f"exponent is probably infinite")
    return FrobeniusPrefix(cls, j, order, theta, cls.modulus(j), PuiseuxPoly(G, order), steps)


def prefix_defect(eq: MahlerEquation, prefix: FrobeniusPrefix):
    """val_z(L_lambda(G) - z^theta), recomputed from scratch (only exponents
    below omega(order) are examined; returns that bound when nothing shows)."""
    eq = eq if eq.is_normalized else normalize_equation(eq)
    target = omega(eq, prefix.order)
    acc: dict[Fraction, object] = {}
    for v, g in prefix.unscaled.terms.items():
        for e, P in monomial_image(eq, v, target).items():
            acc[e] = acc.get(e, LAMBDA_FIELD(0)) + g * _to_field(P)
    if prefix.theta < target:
        acc[prefix.theta] = acc.get(prefix.theta, LAMBDA_FIELD(0)) - 1
    nonzero = [e for e, x in acc.items() if x != 0]
    return min(nonzero) if nonzero else target
