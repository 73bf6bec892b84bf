"""One-line equation syntax.

Example::

    z^8*f(z^4) - (z^2+z^3+z^7)*f(z^2) + (1+z)*f(z) = 0 ; p=2

Each term is a product of coefficient factors and exactly one ``f(z^k)``
with k a power of p. Coefficient factors are rationals (``3/4``),
monomials (``z``, ``z^3``, ``z^(1/2)``, ``z^-2``) and parenthesised sums;
``O(z^k)`` inside a sum marks a truncated series. ``p`` may be omitted when
it can be read off the arguments of f. Floating-point literals are rejected.
"""

from __future__ import annotations

import json
import os
import re
import sys
from fractions import Fraction

from .equation import MahlerEquation
from .errors import MahlerError
from .puiseux import PuiseuxPoly


class ParseError(MahlerError, ValueError):
    def __init__(self, message: str, position: int | None = None, text: str | None = None):
        self.position = position
        self.text = text
        where = ""
        if position is not None:
            where = f" at column {position + 1}"
            if text is not None:
                where += f"\n  {text}\n  {' ' * position}^"
        super().__init__(message + where)


_TOKEN = re.compile(r"\s*(?:(\d+\.\d*|\.\d+)|(\d+)|([A-Za-z_]+)|(.))")


def _tokenize(text: str):
    out = []
    pos = 0
    text = text.replace("−", "-").replace("·", "*")
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        if m.group(0).strip() == "":
            break
        start = m.start(m.lastindex)
        if m.group(1):
            raise ParseError(f"floating-point literal {m.group(1)!r} is not allowed; "
                             "write an exact fraction", start, text)
        if m.group(2):
            out.append(("int", int(m.group(2)), start))
        elif m.group(3):
            out.append(("name", m.group(3), start))
        else:
            out.append(("op", m.group(4), start))
        pos = m.end()
    out.append(("end", None, len(text)))
    return out, text


class _Parser:
    def __init__(self, text: str):
        self.tokens, self.text = _tokenize(text)
        self.i = 0

    # helpers
    def _leading_sign(self) -> int:
        if self.accept("op", "-"):
            return -1
        self.accept("op", "+")
        return 1

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, tok[2], self.text)

    def accept(self, kind, value=None):
        tok = self.peek()
        if tok[0] == kind and (value is None or tok[1] == value):
            self.i += 1
            return tok
        return None

    def expect(self, kind, value=None, what=None):
        tok = self.accept(kind, value)
        if tok is None:
            self.error(f"expected {what or value or kind}")
        return tok

    # grammar
    def equation(self):
        terms = self.side()
        if self.accept("op", "="):
            zero = self.expect("int", what="0")
            if zero[1] != 0:
                self.error("the right-hand side must be 0", zero)
        p = None
        if self.accept("op", ";"):
            self.expect("name", "p", what="p=<integer>")
            self.expect("op", "=")
            p = self.expect("int", what="an integer value for p")[1]
        if self.peek()[0] != "end":
            self.error("unexpected input")
        return terms, p

    def side(self):
        terms = []
        sign = self._leading_sign()
        while True:
            start = self.peek()
            coef, arg = self.term()
            if arg is None:
                self.error("term without f(...)", start)
            terms.append((coef.scale(Fraction(sign)), arg, start))
            if self.accept("op", "+"):
                sign = 1
            elif self.accept("op", "-"):
                sign = -1
            else:
                return terms

    def term(self):
        coef = PuiseuxPoly({0: Fraction(1)})
        arg = None
        while True:
            tok = self.peek()
            if tok[0] == "name" and tok[1] == "f":
                if arg is not None:
                    self.error("a term may contain f(...) only once")
                arg = self.application()
            else:
                coef = coef * self.factor()
            if not self.accept("op", "*"):
                return coef, arg

    def application(self):
        self.expect("name", "f")
        self.expect("op", "(")
        self.expect("name", "z", what="z")
        k = Fraction(1)
        tok = self.peek()
        if self.accept("op", "^"):
            k = self.exponent()
        if k.denominator != 1 or k < 1:
            self.error("f must be applied to z^k with k a positive integer", tok)
        self.expect("op", ")")
        return int(k)

    def factor(self) -> PuiseuxPoly:
        tok = self.peek()
        if tok[0] == "int":
            return PuiseuxPoly({0: self.number()})
        if tok[0] == "name" and tok[1] == "z":
            self.take()
            e = self.exponent() if self.accept("op", "^") else Fraction(1)
            return PuiseuxPoly({e: Fraction(1)})
        if self.accept("op", "("):
            s = self.series()
            self.expect("op", ")")
            return s
        self.error("expected a number, z^k, or a parenthesised coefficient")

    def series(self) -> PuiseuxPoly:
        acc = PuiseuxPoly()
        order = None
        sign = self._leading_sign()
        while True:
            tok = self.peek()
            if tok[0] == "name" and tok[1] == "O":
                self.take()
                self.expect("op", "(")
                self.expect("name", "z", what="z")
                e = self.exponent() if self.accept("op", "^") else Fraction(1)
                self.expect("op", ")")
                order = e if order is None else min(order, e)
            else:
                coef = PuiseuxPoly({0: Fraction(1)})
                while True:
                    coef = coef * self.factor()
                    if not self.accept("op", "*"):
                        break
                acc = acc + coef.scale(Fraction(sign))
            if self.accept("op", "+"):
                sign = 1
            elif self.accept("op", "-"):
                sign = -1
            else:
                break
        if order is not None:
            bad = [e for e in acc.terms if e >= order]
            if bad:
                self.error(f"term z^{bad[0]} lies beyond O(z^{order})")
            acc = acc.truncate(order)
        return acc

    def number(self) -> Fraction:
        num = self.expect("int", what="a number")[1]
        if self.accept("op", "/"):
            den_tok = self.expect("int", what="a denominator")
            if den_tok[1] == 0:
                self.error("zero denominator", den_tok)
            return Fraction(num, den_tok[1])
        return Fraction(num)

    def exponent(self) -> Fraction:
        if self.accept("op", "-"):
            return -self.number()
        close = None
        if self.accept("op", "("):
            close = ")"
        elif self.accept("op", "{"):
            close = "}"
        if close is None:
            return Fraction(self.expect("int", what="an exponent")[1])
        neg = bool(self.accept("op", "-"))
        e = self.number()
        self.expect("op", close)
        return -e if neg else e


def _index(k: int, p: int) -> int | None:
    i = 0
    while k > 1 and k % p == 0:
        k //= p
        i += 1
    return i if k == 1 else None


def parse_equation(text: str, name: str | None = None) -> MahlerEquation:
    parser = _Parser(text)
    terms, p = parser.equation()
    args = sorted({arg for _, arg, _ in terms})
    if p is None:
        bigger = [k for k in args if k > 1]
        if not bigger:
            raise ParseError("cannot infer p: no f(z^k) with k > 1; add '; p=<integer>'")
        p = bigger[0]
    if p < 2:
        raise ParseError(f"p must be at least 2, got {p}")
    coeffs: dict[int, PuiseuxPoly] = {}
    for coef, arg, tok in terms:
        i = _index(arg, p)
        if i is None:
            raise ParseError(f"f(z^{arg}) is not of the form f(z^(p^i)) with p={p}",
                             tok[2], parser.text)
        coeffs[i] = coeffs[i] + coef if i in coeffs else coef
    m = max(coeffs)
    return MahlerEquation(p, tuple(coeffs.get(i, PuiseuxPoly()) for i in range(m + 1)),
                          name=name)


# JSON documents
_RATIONAL = re.compile(r"\s*-?\d+(?:/\d+)?\s*")


def parse_rational(s, where: str = "value") -> Fraction:
    """Exact rational from "-3/4", "5" or a JSON integer. Floats are refused."""
    if isinstance(s, bool) or isinstance(s, float):
        raise ParseError(f"{where}: {s!r} is not an exact rational")
    if isinstance(s, int):
        return Fraction(s)
    if not isinstance(s, str) or not _RATIONAL.fullmatch(s):
        raise ParseError(f"{where}: {s!r} is not an exact rational (expected 'num' or 'num/den')")
    return Fraction(s.strip())


def _integer(x, where: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise ParseError(f"{where}: expected an integer, got {x!r}")
    return x


def _coefficient(doc, i: int) -> PuiseuxPoly:
    if not isinstance(doc, dict) or "terms" not in doc:
        raise ParseError(f"coefficients[{i}]: expected an object with 'terms'")
    terms = {}
    for k, t in enumerate(doc["terms"]):
        where = f"coefficients[{i}].terms[{k}]"
        if not isinstance(t, (list, tuple)) or len(t) != 3:
            raise ParseError(f"{where}: expected [num, den, coefficient]")
        num, den = _integer(t[0], where), _integer(t[1], where)
        if den <= 0:
            raise ParseError(f"{where}: exponent denominator must be positive")
        e = Fraction(num, den)
        c = parse_rational(t[2], where)
        terms[e] = terms.get(e, Fraction(0)) + c
    order = doc.get("truncation_order")
    if order is not None:
        where = f"coefficients[{i}].truncation_order"
        if not isinstance(order, (list, tuple)) or len(order) != 2:
            raise ParseError(f"{where}: expected [num, den]")
        num, den = _integer(order[0], where), _integer(order[1], where)
        if den <= 0:
            raise ParseError(f"{where}: denominator must be positive")
        order = Fraction(num, den)
        beyond = [e for e, c in terms.items() if c and e >= order]
        if beyond:
            raise ParseError(f"{where}: term z^{beyond[0]} lies beyond O(z^{order})")
    return PuiseuxPoly(terms, order)


def parse_document(doc: dict) -> MahlerEquation:
    if not isinstance(doc, dict):
        raise ParseError("equation document must be a JSON object")
    for key in ("p", "coefficients"):
        if key not in doc:
            raise ParseError(f"equation document lacks {key!r}")
    p = _integer(doc["p"], "p")
    coeffs = doc["coefficients"]
    if not isinstance(coeffs, list):
        raise ParseError("'coefficients' must be a list")
    meta = doc.get("metadata") or {}
    name = meta.get("name") if isinstance(meta, dict) else None
    return MahlerEquation(p, tuple(_coefficient(c, i) for i, c in enumerate(coeffs)), name=name)


def equation_document(eq: MahlerEquation) -> dict:
    coeffs = []
    for a in eq.coefficients:
        order = a.truncation_order
        coeffs.append({
            "terms": [[e.numerator, e.denominator, str(c)] for e, c in a.terms.items()],
            "truncation_order": None if order is None else [order.numerator, order.denominator],
        })
    doc = {"p": eq.p, "coefficients": coeffs}
    if eq.name:
        doc["metadata"] = {"name": eq.name}
    return doc


def parse_text(text: str, name: str | None = None) -> MahlerEquation:
    """JSON document or one-liner, whichever the text is."""
    stripped = text.strip()
    if stripped.startswith("{"):
        try:
            doc = json.loads(stripped, parse_float=_no_float)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc.msg}", exc.pos, None) from exc
        eq = parse_document(doc)
        if name and not eq.name:
            eq = MahlerEquation(eq.p, eq.coefficients, name=name)
        return eq
    lines = [ln for ln in stripped.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if len(lines) != 1:
        raise ParseError("expected one equation on a single line")
    return parse_equation(lines[0], name=name)


def _no_float(s):
    raise ParseError(f"floating-point literal {s!r} is not allowed")


def load_equation(path: str) -> MahlerEquation:
    """Read an equation from a file; '-' reads standard input."""
    if path == "-":
        return parse_text(sys.stdin.read())
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    return parse_text(text, name=os.path.splitext(os.path.basename(path))[0])
