"""Canonical text and JSON serialization with bit-exact round-trips.

Text form: monomials in descending graded-lex order (``n`` ranked
last), ``*`` between factors, ``^`` for exponents >= 2.  The scalar
tokens ``i``, ``z3`` denote the fourth and third roots of unity.

JSON form: a polynomial is a list of ``{"coef": ..., "exps": [...]}``
objects in the same canonical order; rational coefficients serialize
as ``"p/q"`` strings, cyclotomic ones as ``{"conductor": m,
"coords": ["p/q", ...]}``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Sequence

from .cyclo import Cyclo
from .poly import Poly, canonical_vars


# -- scalars ---------------------------------------------------------------


def fraction_to_str(fr: Fraction) -> str:
    if fr.denominator == 1:
        return str(fr.numerator)
    return f"{fr.numerator}/{fr.denominator}"


_ROOT_TOKEN = {3: "z3", 4: "i"}


def scalar_to_str(value) -> str:
    c = Cyclo.of(value)
    if c.m == 1:
        return fraction_to_str(c.co[0])
    root = _ROOT_TOKEN[c.m]
    re, im = c.co
    parts = []
    if re:
        parts.append(fraction_to_str(re))
    if im == 1:
        imtxt = root
    elif im == -1:
        imtxt = f"-{root}"
    else:
        imtxt = f"{fraction_to_str(im)}*{root}"
    if parts and not imtxt.startswith("-"):
        return f"{parts[0]}+{imtxt}"
    return f"{parts[0]}{imtxt}" if parts else imtxt


def scalar_to_json(value):
    c = Cyclo.of(value)
    if c.m == 1:
        return fraction_to_str(c.co[0])
    return {"conductor": c.m, "coords": [fraction_to_str(x) for x in c.co]}


def scalar_from_json(data) -> Cyclo:
    if isinstance(data, str):
        return Cyclo.of(Fraction(data))
    if isinstance(data, dict):
        return Cyclo(data["conductor"], [Fraction(x) for x in data["coords"]])
    if isinstance(data, list):  # bare coordinate list defaults to conductor 4
        raise ValueError("coordinate list needs a conductor tag")
    return Cyclo.of(Fraction(data))


# -- polynomials: text ---------------------------------------------------------


def _monomial_to_str(vars: Sequence[str], exps: Sequence[int]) -> str:
    factors = []
    for v, e in zip(vars, exps):
        if e == 1:
            factors.append(v)
        elif e >= 2:
            factors.append(f"{v}^{e}")
    return "*".join(factors)


def poly_to_str(p: Poly) -> str:
    if p.is_zero():
        return "0"
    chunks: List[str] = []
    for exps, coef in p.sorted_terms():
        mono = _monomial_to_str(p.vars, exps)
        ctxt = scalar_to_str(coef)
        composite = "+" in ctxt or "-" in ctxt[1:]
        negated = False
        if composite:
            ctxt = f"({ctxt})"
        elif ctxt.startswith("-"):
            negated = True
            ctxt = ctxt[1:]
        if mono:
            body = mono if ctxt == "1" else f"{ctxt}*{mono}"
        else:
            body = ctxt
        if not chunks:
            chunks.append(f"-{body}" if negated else body)
        else:
            chunks.append(f"- {body}" if negated else f"+ {body}")
    return " ".join(chunks)


# -- polynomials: JSON ------------------------------------------------------------


def poly_to_json(p: Poly) -> list:
    return [{"coef": scalar_to_json(coef), "exps": list(exps)}
            for exps, coef in p.sorted_terms()]


def poly_from_json(data: list, vars: Sequence[str]) -> Poly:
    vars = tuple(vars)
    terms = {}
    for item in data:
        exps = tuple(item["exps"])
        coef = scalar_from_json(item["coef"])
        if exps in terms:
            raise ValueError("duplicate exponent vector")
        terms[exps] = coef
    return Poly(vars, terms)


# -- expression parser --------------------------------------------------------------
#
# Grammar (whitespace-insensitive):
#   expr   := term (('+'|'-') term)*
#   term   := factor (('*') factor)*     (juxtaposition is not allowed)
#   factor := base ('^' integer)?
#   base   := integer | integer '/' integer | name | '(' expr ')' | '-' factor


class _Tokens:
    def __init__(self, text: str):
        self.items = self._lex(text)
        self.pos = 0

    @staticmethod
    def _lex(text: str):
        out = []
        i = 0
        while i < len(text):
            ch = text[i]
            if ch.isspace():
                i += 1
            elif ch.isdigit():
                j = i
                while j < len(text) and text[j].isdigit():
                    j += 1
                out.append(("int", text[i:j]))
                i = j
            elif ch.isalpha() or ch == "_":
                j = i
                while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                    j += 1
                out.append(("name", text[i:j]))
                i = j
            elif ch in "+-*/^()":
                out.append((ch, ch))
                i += 1
            else:
                raise ValueError(f"unexpected character {ch!r}")
        out.append(("end", ""))
        return out

    def peek(self):
        return self.items[self.pos][0]

    def take(self, kind=None):
        tok = self.items[self.pos]
        if kind is not None and tok[0] != kind:
            raise ValueError(f"expected {kind}, found {tok[1]!r}")
        self.pos += 1
        return tok


def parse_poly(text: str) -> Poly:
    """Parse the canonical text form (and ordinary +-*^() expressions)."""
    toks = _Tokens(text)
    p = _parse_expr(toks)
    if toks.peek() != "end":
        raise ValueError(f"trailing input near {toks.take()[1]!r}")
    return p


def _parse_expr(toks: _Tokens) -> Poly:
    p = _parse_term(toks)
    while toks.peek() in ("+", "-"):
        op = toks.take()[0]
        q = _parse_term(toks)
        p = p + q if op == "+" else p - q
    return p


def _parse_term(toks: _Tokens) -> Poly:
    p = _parse_factor(toks)
    while True:
        if toks.peek() == "*":
            toks.take()
            p = p * _parse_factor(toks)
        elif toks.peek() == "/":
            toks.take()
            q = _parse_factor(toks)
            if not q.is_constant():
                raise ValueError("division only by scalars in polynomial input")
            p = p.scale(q.constant_value().inverse())
        else:
            return p


def _parse_factor(toks: _Tokens) -> Poly:
    if toks.peek() == "-":
        toks.take()
        return -_parse_factor(toks)
    base = _parse_base(toks)
    if toks.peek() == "^":
        toks.take()
        exp = int(toks.take("int")[1])
        return base**exp
    return base


def _parse_base(toks: _Tokens) -> Poly:
    kind = toks.peek()
    if kind == "int":
        value = int(toks.take()[1])
        return Poly.const(Fraction(value))
    if kind == "name":
        name = toks.take()[1]
        if name == "i":
            return Poly.const(Cyclo.zeta(4))
        if name == "z3":
            return Poly.const(Cyclo.zeta(3))
        return Poly.var(name)
    if kind == "(":
        toks.take()
        p = _parse_expr(toks)
        toks.take(")")
        return p
    raise ValueError(f"unexpected token {toks.take()[1]!r}")


def parse_weight(text: str) -> Cyclo:
    """Parse one CLI weight: a rational, ``i``, ``w`` (= z3) or ``w2``."""
    txt = text.strip().replace("w2", "(z3^2)").replace("w", "z3")
    p = parse_poly(txt)
    if not p.is_constant():
        raise ValueError(f"weight {text!r} is not a scalar")
    return p.constant_value()
