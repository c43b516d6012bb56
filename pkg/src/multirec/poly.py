"""Exact multivariate polynomials over Q, Q(z3) or Q(z4).

Terms are stored sparsely as a map from exponent tuples to nonzero
:class:`~multirec.cyclo.Cyclo` coefficients.  The monomial order is
graded lexicographic with the shift variable ``n`` ranked last, so that
polynomials that are univariate in ``n`` sort by degree.  Variable sets
are merged automatically when two polynomials are combined.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Sequence, Tuple, Union

from .cyclo import Cyclo, Scalar

Exps = Tuple[int, ...]


def canonical_vars(names: Iterable[str]) -> Tuple[str, ...]:
    """Deduplicate and order variable names; ``n`` always ranks last."""
    uniq = sorted(set(names))
    if "n" in uniq:
        uniq.remove("n")
        uniq.append("n")
    return tuple(uniq)


def _grlex_key(exps: Exps):
    return (sum(exps), exps)


class Poly:
    """A multivariate polynomial with exact cyclotomic coefficients."""

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, vars: Sequence[str], terms: Mapping[Exps, Scalar]):
        self.vars = tuple(vars)
        clean: Dict[Exps, Cyclo] = {}
        for exps, coef in terms.items():
            c = Cyclo.of(coef)
            if not c.is_zero():
                clean[tuple(exps)] = c
        self.terms = clean
        self._hash = None

    # -- constructors ------------------------------------------------------

    @staticmethod
    def const(value: Scalar, vars: Sequence[str] = ()) -> "Poly":
        vars = tuple(vars)
        return Poly(vars, {(0,) * len(vars): Cyclo.of(value)})

    @staticmethod
    def var(name: str) -> "Poly":
        return Poly((name,), {(1,): Cyclo.of(1)})

    @staticmethod
    def zero(vars: Sequence[str] = ()) -> "Poly":
        return Poly(tuple(vars), {})

    # -- basic views ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self) -> Cyclo:
        if self.is_zero():
            return Cyclo.of(0)
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return next(iter(self.terms.values()))

    def total_degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, name: str) -> int:
        if name not in self.vars or not self.terms:
            return 0 if self.terms else -1
        i = self.vars.index(name)
        return max(e[i] for e in self.terms) if self.terms else -1

    def leading(self) -> Tuple[Exps, Cyclo]:
        """Leading (exponents, coefficient) under graded lex, n ranked last."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        exps = max(self.terms, key=_grlex_key)
        return exps, self.terms[exps]

    def sorted_terms(self):
        """Terms in descending graded-lex order (the canonical order)."""
        return sorted(self.terms.items(), key=lambda kv: _grlex_key(kv[0]), reverse=True)

    def coefficient_in(self, name: str, power: int) -> "Poly":
        """The coefficient of ``name**power`` as a polynomial in the other vars."""
        if name not in self.vars:
            if power == 0:
                return self
            return Poly.zero(self.vars)
        i = self.vars.index(name)
        rest = self.vars[:i] + self.vars[i + 1:]
        terms = {}
        for exps, coef in self.terms.items():
            if exps[i] == power:
                key = exps[:i] + exps[i + 1:]
                terms[key] = terms.get(key, Cyclo.of(0)) + coef
        return Poly(rest, terms)

    # -- variable alignment ----------------------------------------------------

    def with_vars(self, vars: Sequence[str]) -> "Poly":
        vars = tuple(vars)
        if vars == self.vars:
            return self
        if not set(self.vars) <= set(vars):
            raise ValueError(f"cannot restrict {self.vars} to {vars}")
        pos = [vars.index(v) for v in self.vars]
        width = len(vars)
        terms = {}
        for exps, coef in self.terms.items():
            new = [0] * width
            for p, e in zip(pos, exps):
                new[p] = e
            terms[tuple(new)] = coef
        return Poly(vars, terms)

    @staticmethod
    def _aligned(a: "Poly", b: "Poly"):
        if a.vars == b.vars:
            return a, b
        vars = canonical_vars(a.vars + b.vars)
        return a.with_vars(vars), b.with_vars(vars)

    # -- ring operations ----------------------------------------------------------

    def __add__(self, other):
        other = _lift(other, self.vars)
        if other is NotImplemented:
            return NotImplemented
        a, b = Poly._aligned(self, other)
        terms = dict(a.terms)
        for exps, coef in b.terms.items():
            cur = terms.get(exps)
            s = coef if cur is None else cur + coef
            if s.is_zero():
                terms.pop(exps, None)
            else:
                terms[exps] = s
        out = Poly.__new__(Poly)
        out.vars = a.vars
        out.terms = terms
        out._hash = None
        return out

    __radd__ = __add__

    def __neg__(self):
        out = Poly.__new__(Poly)
        out.vars = self.vars
        out.terms = {e: -c for e, c in self.terms.items()}
        out._hash = None
        return out

    def __sub__(self, other):
        other = _lift(other, self.vars)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _lift(other, self.vars)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _lift(other, self.vars)
        if other is NotImplemented:
            return NotImplemented
        a, b = Poly._aligned(self, other)
        if len(a.terms) < len(b.terms):
            a, b = b, a
        terms: Dict[Exps, Cyclo] = {}
        for eb, cb in b.terms.items():
            for ea, ca in a.terms.items():
                key = tuple(x + y for x, y in zip(ea, eb))
                prod = ca * cb
                cur = terms.get(key)
                s = prod if cur is None else cur + prod
                if s.is_zero():
                    terms.pop(key, None)
                else:
                    terms[key] = s
        out = Poly.__new__(Poly)
        out.vars = a.vars
        out.terms = terms
        out._hash = None
        return out

    __rmul__ = __mul__

    def __pow__(self, exp: int):
        if exp < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly.const(1, self.vars)
        base = self
        while exp:
            if exp & 1:
                result = result * base
            base = base * base
            exp >>= 1
        return result

    def scale(self, c: Scalar) -> "Poly":
        c = Cyclo.of(c)
        if c.is_zero():
            return Poly.zero(self.vars)
        out = Poly.__new__(Poly)
        out.vars = self.vars
        out.terms = {e: k * c for e, k in self.terms.items()}
        out._hash = None
        return out

    # -- comparison ------------------------------------------------------------

    def __eq__(self, other):
        other = _lift(other, self.vars)
        if other is NotImplemented:
            return NotImplemented
        a, b = Poly._aligned(self, other)
        return a.terms == b.terms

    def __hash__(self):
        # hash ignores unused variables so that equal polynomials on
        # different variable sets collide correctly
        if self._hash is None:
            core = frozenset(
                (tuple((v, e) for e, v in zip(exps, self.vars) if e), coef)
                for exps, coef in self.terms.items()
            )
            self._hash = hash(core)
        return self._hash

    def __repr__(self):
        from .serialize import poly_to_str

        return f"Poly({poly_to_str(self)!r})"

    def __str__(self):
        from .serialize import poly_to_str

        return poly_to_str(self)

    # -- substitution and evaluation -----------------------------------------------

    def substitute(self, assignment: Mapping[str, Union[Scalar, "Poly"]]) -> "Poly":
        """Exact substitution of scalars or polynomials for variables."""
        relevant = {v: assignment[v] for v in self.vars if v in assignment}
        if not relevant:
            return self
        kept = tuple(v for v in self.vars if v not in relevant)
        extra = []
        values: Dict[str, Poly] = {}
        for v, val in relevant.items():
            p = val if isinstance(val, Poly) else Poly.const(Cyclo.of(val))
            values[v] = p
            extra.extend(p.vars)
        out_vars = canonical_vars(kept + tuple(extra))
        result = Poly.zero(out_vars)
        cache: Dict[Tuple[str, int], Poly] = {}

        def power_of(v: str, e: int) -> Poly:
            key = (v, e)
            if key not in cache:
                cache[key] = values[v] ** e
            return cache[key]

        for exps, coef in self.terms.items():
            base_exps = tuple(
                e for e, v in zip(exps, self.vars) if v not in relevant
            )
            term = Poly(kept, {base_exps: coef}).with_vars(out_vars) if kept else Poly.const(coef, out_vars)
            for e, v in zip(exps, self.vars):
                if v in relevant and e:
                    term = term * power_of(v, e)
            result = result + term
        return result

    def eval_scalar(self, assignment: Mapping[str, Scalar]) -> Cyclo:
        """Evaluate at scalars covering every variable."""
        missing = [v for v in self.vars if v not in assignment and self.degree_in(v) > 0]
        if missing:
            raise ValueError(f"no value given for {missing}")
        vals = [Cyclo.of(assignment.get(v, 0)) for v in self.vars]
        total = Cyclo.of(0)
        for exps, coef in self.terms.items():
            term = coef
            for v, e in zip(vals, exps):
                if e:
                    term = term * v**e
            total = total + term
        return total

    def shift_var(self, name: str, offset: int) -> "Poly":
        """Substitute ``name -> name + offset`` (offset an integer)."""
        if offset == 0 or name not in self.vars:
            return self
        return self.substitute({name: Poly.var(name) + offset})


def _lift(value, vars: Sequence[str]):
    if isinstance(value, Poly):
        return value
    if isinstance(value, (int, Fraction, Cyclo)):
        return Poly.const(Cyclo.of(value), vars)
    return NotImplemented


# -- content, primitive part, division, gcd -------------------------------------


def rational_content(p: Poly) -> Fraction:
    """Positive rational c with p/c having coprime integer coordinates."""
    if p.is_zero():
        raise ValueError("zero polynomial has no content")
    nums = []
    dens = []
    for coef in p.terms.values():
        for fr in coef.co:
            if fr:
                nums.append(abs(fr.numerator))
                dens.append(fr.denominator)
    g = 0
    for v in nums:
        g = math.gcd(g, v)
    l = 1
    for v in dens:
        l = l * v // math.gcd(l, v)
    return Fraction(g, l)


def primitive_normalize(p: Poly) -> Tuple[Cyclo, Poly]:
    """Split ``p = content * primitive`` deterministically.

    The primitive part has coprime integer coordinates and its leading
    graded-lex coefficient has a positive first nonzero coordinate; the
    content soaks up the rational scale and the sign.
    """
    if p.is_zero():
        raise ValueError("zero has no primitive part")
    content = Fraction(rational_content(p))
    prim = p.scale(Fraction(1, 1) / content)
    _, lead = prim.leading()
    for fr in lead.co:
        if fr:
            if fr < 0:
                content = -content
                prim = -prim
            break
    return Cyclo.of(content), prim


def poly_divmod(num: Poly, den: Poly) -> Tuple[Poly, Poly]:
    """Leading-term division: num = q*den + r with lt(den) dividing no lt(r).

    For exact multiples the remainder is zero; this is all the callers
    need (fraction-free elimination divides exactly by construction).
    """
    if den.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    num, den = Poly._aligned(num, den)
    d_exps, d_coef = den.leading()
    d_inv = d_coef.inverse()
    q = Poly.zero(num.vars)
    r = num
    while not r.is_zero():
        r_exps, r_coef = r.leading()
        diff = tuple(a - b for a, b in zip(r_exps, d_exps))
        if any(d < 0 for d in diff):
            break
        t = Poly(num.vars, {diff: r_coef * d_inv})
        q = q + t
        r = r - t * den
    return q, r


def poly_exact_div(num: Poly, den: Poly) -> Poly:
    q, r = poly_divmod(num, den)
    if not r.is_zero():
        raise ValueError(f"inexact polynomial division: {num} by {den}")
    return q


def divides(den: Poly, num: Poly) -> bool:
    try:
        poly_exact_div(num, den)
        return True
    except ValueError:
        return False


def _monomial_gcd(p: Poly, q: Poly) -> Exps:
    mins = list(next(iter(p.terms)))
    for exps in p.terms:
        mins = [min(m, e) for m, e in zip(mins, exps)]
    for exps in q.terms:
        mins = [min(m, e) for m, e in zip(mins, exps)]
    return tuple(mins)


def _strip_monomial(p: Poly, mono: Exps) -> Poly:
    if not any(mono):
        return p
    return Poly(p.vars, {tuple(e - m for e, m in zip(exps, mono)): c
                         for exps, c in p.terms.items()})


def _scalar_content(coeffs) -> Fraction:
    g, l = 0, 1
    for c in coeffs:
        for fr in c.co:
            if fr:
                g = math.gcd(g, abs(fr.numerator))
                l = l * fr.denominator // math.gcd(l, fr.denominator)
    return Fraction(g, l)


def _coeff_prem(a, b):
    """Pseudo-remainder lc(b)^(deg a - deg b + 1) * a mod b on coefficient lists."""
    lb = b[-1]
    spare = len(a) - len(b) + 1
    r = list(a)
    while r and len(r) >= len(b):
        lr = r[-1]
        r = [c * lb for c in r]
        spare -= 1
        off = len(r) - len(b)
        for k in range(len(b) - 1):
            r[off + k] = r[off + k] - lr * b[k]
        r.pop()
        while r and r[-1].is_zero():
            r.pop()
    if spare > 0 and r:
        f = lb**spare
        r = [c * f for c in r]
    return r


def _univar_gcd(p: Poly, q: Poly, name: str) -> Poly:
    """Subresultant PRS gcd for polynomials univariate in ``name``.

    The subresultant correction factors are exact in the coefficient
    ring without any content gcds, which keeps growth polynomial even
    for cyclotomic coefficients where coordinate-wise content misses
    common ring factors.
    """
    i = p.vars.index(name)

    def as_coeffs(poly: Poly):
        deg = poly.degree_in(name)
        co = [Cyclo.of(0)] * (deg + 1)
        for exps, coef in poly.terms.items():
            co[exps[i]] = co[exps[i]] + coef
        while co and co[-1].is_zero():
            co.pop()
        return co

    def strip(co):
        if not co:
            return co
        inv = 1 / _scalar_content(co)
        return [c * inv for c in co]

    a = strip(as_coeffs(p))
    b = strip(as_coeffs(q))
    if len(a) < len(b):
        a, b = b, a
    g = Cyclo.of(1)
    h = Cyclo.of(1)
    while True:
        if len(b) == 1:  # nonzero scalar: coprime in this variable
            a = [Cyclo.of(1)]
            break
        delta = len(a) - len(b)
        r = _coeff_prem(a, b)
        if not r:
            a = strip(b)
            break
        divisor = g * h**delta
        inv = divisor.inverse()
        a, b = b, [c * inv for c in r]
        g = a[-1]
        if delta == 1:
            h = g
        elif delta > 1:
            h = g**delta * (h.inverse() ** (delta - 1))
    terms = {tuple(d if j == i else 0 for j in range(len(p.vars))): c
             for d, c in enumerate(a) if not c.is_zero()}
    return Poly(p.vars, terms)


def _pseudo_rem(num: Poly, den: Poly, name: str) -> Poly:
    """Pseudo-remainder of num by den with respect to ``name``."""
    i = num.vars.index(name)
    dd = den.degree_in(name)
    lc_den = den.coefficient_in(name, dd).with_vars(num.vars)
    r = num
    while not r.is_zero():
        dr = r.degree_in(name)
        if dr < dd:
            break
        lc_r = r.coefficient_in(name, dr).with_vars(num.vars)
        shift = {tuple(dr - dd if j == i else 0 for j in range(len(num.vars))): Cyclo.of(1)}
        r = r * lc_den - lc_r * Poly(num.vars, shift) * den
    return r


def _poly_content_in(p: Poly, name: str) -> Poly:
    """gcd of the coefficients of p viewed as univariate in ``name``."""
    deg = p.degree_in(name)
    content = None
    for d in range(deg + 1):
        c = p.coefficient_in(name, d)
        if c.is_zero():
            continue
        content = c if content is None else poly_gcd(content, c)
        if content.is_constant():
            break
    return content.with_vars(tuple(v for v in p.vars if v != name))


def poly_gcd(p: Poly, q: Poly) -> Poly:
    """A gcd of p and q, primitive with the global sign convention.

    gcd(p, 0) is the normalized p; constants have gcd 1.  Univariate
    parts use monic Euclid over the coefficient field; multivariate
    parts use a primitive pseudo-remainder sequence, recursing on the
    coefficient ring.
    """
    if p.is_zero() and q.is_zero():
        return Poly.const(0)
    if p.is_zero():
        return primitive_normalize(q)[1]
    if q.is_zero():
        return primitive_normalize(p)[1]
    p, q = Poly._aligned(p, q)
    mono = _monomial_gcd(p, q)
    p = _strip_monomial(p, mono)
    q = _strip_monomial(q, mono)
    mono_poly = Poly(p.vars, {mono: Cyclo.of(1)})
    if p.is_constant() or q.is_constant():
        return primitive_normalize(mono_poly)[1]

    active = [v for v in p.vars if p.degree_in(v) > 0 or q.degree_in(v) > 0]
    g = _gcd_core(p, q, active) * mono_poly
    return primitive_normalize(g)[1]


def _gcd_core(p: Poly, q: Poly, active) -> Poly:
    if p == q:
        return p
    live = [v for v in active if p.degree_in(v) > 0 and q.degree_in(v) > 0]
    if not live:
        return Poly.const(1, p.vars)
    used = [v for v in active if p.degree_in(v) > 0 or q.degree_in(v) > 0]
    if len(used) == 1:
        return _univar_gcd(p, q, used[0])
    # cheap divisibility probes before the general remainder sequence
    if p.total_degree() <= q.total_degree() and divides(p, q):
        return p
    if q.total_degree() < p.total_degree() and divides(q, p):
        return q
    # main variable of least combined degree keeps the remainder sequence short
    name = min(live, key=lambda v: p.degree_in(v) + q.degree_in(v))

    cp = _poly_content_in(p, name).with_vars(p.vars)
    cq = _poly_content_in(q, name).with_vars(p.vars)
    pp = poly_exact_div(p, cp)
    qq = poly_exact_div(q, cq)
    cont = _gcd_core(cp, cq, [v for v in active if v != name])

    a, b = (pp, qq) if pp.degree_in(name) >= qq.degree_in(name) else (qq, pp)
    while not b.is_zero() and b.degree_in(name) > 0:
        r = _pseudo_rem(a, b, name)
        if r.is_zero():
            rc = _poly_content_in(b, name).with_vars(p.vars)
            return cont * poly_exact_div(b, rc)
        rc = _poly_content_in(r, name).with_vars(p.vars)
        a, b = b, poly_exact_div(r, rc)
    # remainder sequence bottomed out at a nonzero element of the
    # coefficient ring: the primitive parts are coprime in `name`
    return cont


def poly_lcm(p: Poly, q: Poly) -> Poly:
    if p.is_zero() or q.is_zero():
        return Poly.const(0)
    g = poly_gcd(p, q)
    return primitive_normalize(poly_exact_div(p * q, g))[1]
