"""Exact scalars: rationals and elements of the small cyclotomic fields Q(z3), Q(z4).

Rationals are ``fractions.Fraction``; :class:`Cyclo` wraps a conductor
m in {1, 3, 4} together with coordinates on the power basis of the m-th
root of unity.  Conductor 1 is plain Q, conductor 3 uses the basis
(1, z3) with z3^2 = -1 - z3, conductor 4 uses (1, i) with i^2 = -1.
Values whose imaginary coordinate is zero are demoted to conductor 1 on
construction, so equal numbers always have equal representations.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

Rat = Union[int, Fraction]
Scalar = Union[int, Fraction, "Cyclo"]

_DEGREE = {1: 1, 3: 2, 4: 2}


class ConductorError(ValueError):
    """Raised when z3- and z4-valued scalars are mixed."""


class Cyclo:
    """An element of Q, Q(z3) or Q(z4) with exact Fraction coordinates."""

    __slots__ = ("m", "co", "_hash")

    def __init__(self, m: int, coords):
        if m not in _DEGREE:
            raise ValueError(f"unsupported conductor {m}")
        co = tuple(Fraction(c) for c in coords)
        if len(co) != _DEGREE[m]:
            raise ValueError(f"conductor {m} needs {_DEGREE[m]} coordinates")
        if m != 1 and not co[1]:
            m, co = 1, (co[0],)
        self.m = m
        self.co = co
        self._hash = None

    # -- constructors ---------------------------------------------------

    @staticmethod
    def of(value: Scalar) -> "Cyclo":
        if isinstance(value, Cyclo):
            return value
        return Cyclo(1, (Fraction(value),))

    @staticmethod
    def zeta(m: int) -> "Cyclo":
        """The primitive m-th root of unity (m = 3 or 4)."""
        if m not in (3, 4):
            raise ValueError("zeta is only available for conductors 3 and 4")
        return Cyclo(m, (0, 1))

    # -- predicates ------------------------------------------------------

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.co)

    def is_rational(self) -> bool:
        return self.m == 1

    def as_fraction(self) -> Fraction:
        if self.m != 1:
            raise ValueError(f"{self!r} is not rational")
        return self.co[0]

    def __bool__(self) -> bool:
        return not self.is_zero()

    # -- promotion --------------------------------------------------------

    def _promote(self, m: int) -> "Cyclo":
        if self.m == m:
            return self
        if self.m == 1:
            out = Cyclo.__new__(Cyclo)
            out.m = m
            out.co = (self.co[0], Fraction(0))
            out._hash = None
            return out
        raise ConductorError(f"cannot mix conductors {self.m} and {m}")

    @staticmethod
    def _pair(a: "Cyclo", b: "Cyclo"):
        if a.m == b.m:
            return a, b
        m = max(a.m, b.m)
        if min(a.m, b.m) != 1:
            raise ConductorError(f"cannot mix conductors {a.m} and {b.m}")
        return a._promote(m), b._promote(m)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = Cyclo._pair(self, other)
        if a.m == 1:
            return Cyclo(1, (a.co[0] + b.co[0],))
        return Cyclo(a.m, (a.co[0] + b.co[0], a.co[1] + b.co[1]))

    __radd__ = __add__

    def __neg__(self):
        return Cyclo(self.m, tuple(-c for c in self.co))

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = Cyclo._pair(self, other)
        if a.m == 1:
            return Cyclo(1, (a.co[0] * b.co[0],))
        a0, a1 = a.co
        b0, b1 = b.co
        if a.m == 4:
            # (a0 + a1 i)(b0 + b1 i),  i^2 = -1
            return Cyclo(4, (a0 * b0 - a1 * b1, a0 * b1 + a1 * b0))
        # (a0 + a1 z)(b0 + b1 z),  z^2 = -1 - z
        cross = a1 * b1
        return Cyclo(3, (a0 * b0 - cross, a0 * b1 + a1 * b0 - cross))

    __rmul__ = __mul__

    def inverse(self) -> "Cyclo":
        if self.is_zero():
            raise ZeroDivisionError("division by zero scalar")
        if self.m == 1:
            return Cyclo(1, (1 / self.co[0],))
        a0, a1 = self.co
        if self.m == 4:
            norm = a0 * a0 + a1 * a1
            return Cyclo(4, (a0 / norm, -a1 / norm))
        norm = a0 * a0 - a0 * a1 + a1 * a1
        return Cyclo(3, ((a0 - a1) / norm, -a1 / norm))

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, exp: int):
        if exp < 0:
            return self.inverse() ** (-exp)
        result = Cyclo.of(1)
        base = self
        while exp:
            if exp & 1:
                result = result * base
            base = base * base
            exp >>= 1
        return result

    # -- comparison / hashing ----------------------------------------------

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.m != other.m:
            return False  # canonical form makes equal values share a conductor
        return self.co == other.co

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.m, self.co))
        return self._hash

    def __repr__(self):
        return f"Cyclo({self.m}, {self.co})"

    def __str__(self):
        from .serialize import scalar_to_str

        return scalar_to_str(self)

    def conjugate(self) -> "Cyclo":
        """Complex conjugation (the nontrivial field automorphism)."""
        if self.m == 1:
            return self
        a0, a1 = self.co
        if self.m == 4:
            return Cyclo(4, (a0, -a1))
        return Cyclo(3, (a0 - a1, -a1))

    def to_complex(self) -> complex:
        if self.m == 1:
            return complex(self.co[0])
        a0, a1 = float(self.co[0]), float(self.co[1])
        if self.m == 4:
            return complex(a0, a1)
        return complex(a0 - a1 / 2.0, a1 * (3.0 ** 0.5) / 2.0)


def _coerce(value):
    if isinstance(value, Cyclo):
        return value
    if isinstance(value, (int, Fraction)):
        return Cyclo(1, (Fraction(value),))
    return NotImplemented


ZERO = Cyclo.of(0)
ONE = Cyclo.of(1)
