"""Rational functions num/den over :class:`~multirec.poly.Poly`.

Always kept in lowest terms: gcd(num, den) = 1, den primitive with a
positive leading coordinate (the rational scale and sign move into the
numerator).  This makes equality structural.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Union

from .cyclo import Cyclo, Scalar
from .poly import Poly, poly_exact_div, poly_gcd, primitive_normalize


class SpecializationPole(ZeroDivisionError):
    """A substitution made a denominator vanish identically."""


class RatFunc:
    """An exact rational function in canonical form."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly = None):
        if den is None:
            den = Poly.const(1, num.vars)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            self.num = Poly.zero(num.vars)
            self.den = Poly.const(1, num.vars)
            return
        if den.is_constant():
            self.num = num.scale(den.constant_value().inverse())
            self.den = Poly.const(1, num.vars)
            return
        num, den = Poly._aligned(num, den)
        if not num.is_constant():
            g = poly_gcd(num, den)
            if not g.is_constant():
                num = poly_exact_div(num, g)
                den = poly_exact_div(den, g)
        content, den = primitive_normalize(den)
        num = num.scale(content.inverse())
        self.num = num
        self.den = den

    # -- constructors --------------------------------------------------

    @staticmethod
    def of(value: Union[Scalar, Poly, "RatFunc"]) -> "RatFunc":
        if isinstance(value, RatFunc):
            return value
        if isinstance(value, Poly):
            return RatFunc(value)
        return RatFunc(Poly.const(Cyclo.of(value)))

    @staticmethod
    def zero() -> "RatFunc":
        return RatFunc(Poly.zero())

    @staticmethod
    def one() -> "RatFunc":
        return RatFunc(Poly.const(1))

    # -- predicates ------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def as_poly(self) -> Poly:
        if not self.is_polynomial():
            raise ValueError(f"{self} is not polynomial")
        return self.num.scale(self.den.constant_value().inverse())

    def __bool__(self) -> bool:
        return not self.is_zero()

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return NotImplemented
        return RatFunc(self.num * other.den + other.num * self.den,
                       self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        out = RatFunc.__new__(RatFunc)
        out.num = -self.num
        out.den = self.den
        return out

    def __sub__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return RatFunc.zero()
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, exp: int):
        if exp < 0:
            return self.inverse() ** (-exp)
        result = RatFunc.one()
        base = self
        while exp:
            if exp & 1:
                result = result * base
            base = base * base
            exp >>= 1
        return result

    # -- comparison -----------------------------------------------------------

    def __eq__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RatFunc({self.num} / {self.den})"

    def __str__(self):
        from .serialize import poly_to_str

        if self.is_polynomial():
            return poly_to_str(self.as_poly())
        return f"({poly_to_str(self.num)})/({poly_to_str(self.den)})"

    # -- substitution -------------------------------------------------------------

    def substitute(self, assignment: Mapping[str, Union[Scalar, Poly]]) -> "RatFunc":
        num = self.num.substitute(assignment)
        den = self.den.substitute(assignment)
        if den.is_zero():
            raise SpecializationPole("specialization pole")
        return RatFunc(num, den)

    def eval_scalar(self, assignment: Mapping[str, Scalar]) -> Cyclo:
        den = self.den.eval_scalar(assignment)
        if den.is_zero():
            raise SpecializationPole("specialization pole")
        return self.num.eval_scalar(assignment) * den.inverse()


def _lift(value):
    if isinstance(value, RatFunc):
        return value
    if isinstance(value, Poly):
        return RatFunc(value)
    if isinstance(value, (int, Fraction, Cyclo)):
        return RatFunc.of(value)
    return NotImplemented
