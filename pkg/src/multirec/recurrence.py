"""Recurrences with polynomial coefficients and operators in T = t d/dt.

A :class:`Recurrence` stores coefficients c_0..c_M of
sum_k c_k(n) a_{n-k} = 0; normalization trims zero edge coefficients,
removes the common polynomial factor and fixes the sign.  A
:class:`ThetaOperator` stores q_0..q_D with the operator
sum_d q_d(t) T^d acting on power series in t.

The two are linked by the substitution rule  c_k(n) a_{n-k}  <->
t^k c_k(T + k), which converts either way without loss.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple, Union

from .cyclo import Cyclo, Scalar
from .poly import Poly, poly_exact_div, poly_gcd, primitive_normalize


import math


def _joint_rational_content(polys: Sequence[Poly]) -> Fraction:
    nums: List[int] = []
    dens: List[int] = []
    for p in polys:
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


def _normalize_polys(coeffs: Sequence[Poly], sign_index: int):
    """Strip the common polynomial factor, scalar units and rational content.

    The anchor coefficient (first nonzero one, or last for
    ``sign_index = -1``) is made monic first; the joint rational
    content then brings everything to coprime integer coordinates with
    the anchor's leading coordinate positive.
    """
    polys = list(coeffs)
    nonzero = [p for p in polys if not p.is_zero()]
    if not nonzero:
        raise ValueError("zero coefficient family")
    g = None
    for p in nonzero:
        g = p if g is None else poly_gcd(g, p)
        if g.is_constant():
            break
    if not g.is_constant():
        polys = [p if p.is_zero() else poly_exact_div(p, g) for p in polys]
    if sign_index == -1:
        anchor = next(p for p in reversed(polys) if not p.is_zero())
    else:
        anchor = next(p for p in polys if not p.is_zero())
    lead_inv = anchor.leading()[1].inverse()
    polys = [p.scale(lead_inv) for p in polys]
    scale = 1 / _joint_rational_content(polys)
    polys = [p.scale(scale) for p in polys]
    return polys


class Recurrence:
    """sum_{k=0..order} c_k(n) a_{n-k} = 0, in canonical normalized form."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[Union[Poly, Scalar]], normalize: bool = True):
        polys = [c if isinstance(c, Poly) else Poly.const(Cyclo.of(c))
                 for c in coeffs]
        if normalize:
            polys = self._canonicalize(polys)
        self.coeffs = tuple(polys)

    @staticmethod
    def _canonicalize(polys: List[Poly]) -> List[Poly]:
        while polys and polys[-1].is_zero():
            polys.pop()
        if not polys:
            raise ValueError("empty recurrence")
        # leading zero coefficients mean the relation starts at a_{n-1};
        # shift the index so that c_0 is the a_n coefficient
        while polys and polys[0].is_zero():
            polys = [p.shift_var("n", 1) for p in polys[1:]]
        if not polys:
            raise ValueError("empty recurrence")
        return _normalize_polys(polys, sign_index=0)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def term_count(self) -> int:
        return sum(1 for c in self.coeffs if not c.is_zero())

    def variables(self) -> Tuple[str, ...]:
        from .poly import canonical_vars

        names = {"n"}
        for c in self.coeffs:
            names.update(v for v in c.vars if c.degree_in(v) > 0)
        return canonical_vars(names)

    def is_symbolic(self) -> bool:
        return self.variables() != ("n",)

    def residual(self, n: int, series: Sequence) -> Union[Cyclo, Poly]:
        """sum_k c_k(n) series[n-k]; series is indexed from 0."""
        if n < self.order:
            raise ValueError("n below recurrence order")
        total: Union[Cyclo, Poly] = Cyclo.of(0)
        for k, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            if any(v != "n" and c.degree_in(v) > 0 for v in c.vars):
                value = c.substitute({"n": n})
            else:
                value = c.eval_scalar({"n": n})
            total = total + value * series[n - k]
        return total

    def substitute_weights(self, assignment) -> "Recurrence":
        return Recurrence([c.substitute(assignment) for c in self.coeffs])

    def scaled_by(self, factor: Poly) -> "Recurrence":
        """The same relation multiplied through by a polynomial (unnormalized)."""
        return Recurrence([c * factor for c in self.coeffs], normalize=False)

    def is_multiple_of(self, other: "Recurrence") -> bool:
        """True when self's coefficients are proportional to other's."""
        if self.order != other.order:
            return False
        for ck, dk in zip(self.coeffs, other.coeffs):
            if ck.is_zero() != dk.is_zero():
                return False
        return all((self.coeffs[k] * other.coeffs[0] - other.coeffs[k] * self.coeffs[0]).is_zero()
                   for k in range(self.order + 1))

    def __eq__(self, other):
        if not isinstance(other, Recurrence):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        from .serialize import poly_to_str

        parts = []
        for k, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            idx = "a(n)" if k == 0 else f"a(n-{k})"
            parts.append(f"({poly_to_str(c)})*{idx}")
        return " + ".join(parts) + " = 0"


class ThetaOperator:
    """sum_d q_d(t) T^d with T = t d/dt, q_d polynomial in t (and weights)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[Union[Poly, Scalar]], normalize: bool = True):
        polys = [c if isinstance(c, Poly) else Poly.const(Cyclo.of(c))
                 for c in coeffs]
        while polys and polys[-1].is_zero():
            polys.pop()
        if not polys:
            raise ValueError("zero operator")
        if normalize:
            polys = _normalize_polys(polys, sign_index=-1)
        self.coeffs = tuple(polys)

    @property
    def theta_degree(self) -> int:
        return len(self.coeffs) - 1

    def degree_t(self) -> int:
        return max(c.degree_in("t") for c in self.coeffs)

    def t_coefficient(self, d: int, k: int) -> Poly:
        """The coefficient of t^k inside q_d (a polynomial in the weights)."""
        return self.coeffs[d].coefficient_in("t", k)

    def apply_series(self, series: Sequence, order: int) -> List:
        """Coefficients of t^0..t^order of the operator applied to sum series[n] t^n."""
        out = []
        for m in range(order + 1):
            total: Union[Cyclo, Poly] = Cyclo.of(0)
            for d, q in enumerate(self.coeffs):
                for k in range(min(q.degree_in("t"), m) + 1):
                    qdk = q.coefficient_in("t", k)
                    if qdk.is_zero():
                        continue
                    total = total + qdk * Fraction((m - k) ** d) * series[m - k]
            out.append(total)
        return out

    def __eq__(self, other):
        if not isinstance(other, ThetaOperator):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        from .serialize import poly_to_str

        parts = []
        for d in range(self.theta_degree, -1, -1):
            q = self.coeffs[d]
            if q.is_zero():
                continue
            if d == 0:
                parts.append(f"({poly_to_str(q)})")
            elif d == 1:
                parts.append(f"({poly_to_str(q)})*T")
            else:
                parts.append(f"({poly_to_str(q)})*T^{d}")
        return " + ".join(parts)


# -- conversion ----------------------------------------------------------------


def to_theta_operator(rec: Recurrence, normalize: bool = True) -> ThetaOperator:
    """Convert sum c_k(n) a_{n-k} = 0 into sum_k t^k c_k(T + k)."""
    t = Poly.var("t")
    theta = Poly.var("_theta")
    degree = max(c.degree_in("n") for c in rec.coeffs)
    q: List[Poly] = [Poly.zero() for _ in range(degree + 1)]
    for k, c in enumerate(rec.coeffs):
        if c.is_zero():
            continue
        shifted = c.substitute({"n": theta + k})
        for d in range(degree + 1):
            part = shifted.coefficient_in("_theta", d)
            if part.is_zero():
                continue
            q[d] = q[d] + part * t**k
    return ThetaOperator(q, normalize=normalize)


def from_theta_operator(op: ThetaOperator) -> Recurrence:
    """Invert the substitution rule: c_k(n) = sum_d [t^k] q_d * (n - k)^d."""
    n = Poly.var("n")
    order = op.degree_t()
    coeffs: List[Poly] = [Poly.zero() for _ in range(order + 1)]
    for d, qd in enumerate(op.coeffs):
        for k in range(qd.degree_in("t") + 1):
            part = qd.coefficient_in("t", k)
            if part.is_zero():
                continue
            coeffs[k] = coeffs[k] + part * (n - k) ** d
    return Recurrence(coeffs)


def annihilation_check(op: ThetaOperator, series: Sequence, order: int) -> bool:
    """True when op kills sum series[n] t^n through the coefficient of t^order."""
    if len(series) < max(order + op.degree_t(), order + 1):
        raise ValueError("insufficient series length")
    values = op.apply_series(series, order)
    return all(_is_zero_scalar(v) for v in values)


def _is_zero_scalar(v) -> bool:
    if isinstance(v, (Cyclo, Poly)):
        return v.is_zero()
    return v == 0
