"""Brute-force exact evaluation of the weighted multinomial-square sums.

This module is the ground truth that every derived recurrence is
checked against.  ``weighted_term`` and ``aux_term`` enumerate all
compositions of n directly; ``weighted_sequence`` evaluates the same
defining sum through the one-weight-at-a-time binomial factorization,
which is much faster and is cross-checked against the enumerating form
in the test suite.  Neither path knows anything about recurrences.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, List, Optional, Sequence, Tuple, Union

from .cyclo import Cyclo, Scalar
from .poly import Poly

DEFAULT_BUDGET = 10**7

WeightLike = Union[int, Fraction, Cyclo, str]


class BudgetExceeded(RuntimeError):
    """Composition enumeration would exceed the configured budget."""


class InvalidComposition(ValueError):
    """Parts are negative or do not sum to n."""


@dataclass(frozen=True)
class SequenceSpec:
    """A weighted sum family: size N, weights (or symbols), power k.

    Numeric weights are :class:`Cyclo` scalars; symbolic mode stores
    variable names instead.  k = 2 is the squared-multinomial case;
    higher powers are only supported for N = 2.
    """

    N: int
    weights: Tuple[Union[Cyclo, str], ...]
    power: int = 2

    def __post_init__(self):
        if self.N < 2:
            raise ValueError("N must be at least 2")
        if self.power < 2:
            raise ValueError("power must be at least 2")
        if self.power > 2 and self.N != 2:
            raise ValueError("powers above 2 are only supported for N = 2")
        if len(self.weights) != self.N:
            raise ValueError(f"expected {self.N} weights, got {len(self.weights)}")
        norm = tuple(w if isinstance(w, str) else Cyclo.of(w) for w in self.weights)
        object.__setattr__(self, "weights", norm)

    @staticmethod
    def numeric(weights: Sequence[WeightLike], power: int = 2) -> "SequenceSpec":
        ws = tuple(Cyclo.of(w) for w in weights)
        return SequenceSpec(len(ws), ws, power)

    @staticmethod
    def symbolic(names: Sequence[str], power: int = 2) -> "SequenceSpec":
        return SequenceSpec(len(tuple(names)), tuple(names), power)

    @property
    def is_symbolic(self) -> bool:
        return any(isinstance(w, str) for w in self.weights)

    def weight_values(self) -> List[Union[Cyclo, Poly]]:
        return [Poly.var(w) if isinstance(w, str) else w for w in self.weights]

    def has_zero_weight(self) -> bool:
        return any(not isinstance(w, str) and w.is_zero() for w in self.weights)


@dataclass(frozen=True)
class EpsVector:
    """Auxiliary exponent vector: one exponent per weight, each < k."""

    exps: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "exps", tuple(self.exps))

    def validate(self, spec: SequenceSpec) -> None:
        if len(self.exps) != spec.N:
            raise ValueError(f"eps length {len(self.exps)} != N = {spec.N}")
        if any(e < 0 or e >= spec.power for e in self.exps):
            raise ValueError(f"eps entries must lie in [0, {spec.power - 1}]")

    @property
    def level(self) -> int:
        return sum(self.exps)

    def raised(self, i: int) -> "EpsVector":
        return EpsVector(self.exps[:i] + (self.exps[i] + 1,) + self.exps[i + 1:])

    def lowered(self, i: int) -> "EpsVector":
        return EpsVector(self.exps[:i] + (self.exps[i] - 1,) + self.exps[i + 1:])


def multinomial(n: int, parts: Sequence[int]) -> int:
    """n! / (p_1! ... p_N!) for non-negative parts summing to n."""
    if any(p < 0 for p in parts) or sum(parts) != n:
        raise InvalidComposition(f"invalid composition {tuple(parts)} of {n}")
    out = 1
    rest = n
    for p in parts[:-1]:
        out *= math.comb(rest, p)
        rest -= p
    return out


def compositions(n: int, parts: int) -> Iterator[Tuple[int, ...]]:
    """All ordered compositions of n into ``parts`` non-negative parts, lex order."""
    if parts == 1:
        yield (n,)
        return
    for first in range(n + 1):
        for rest in compositions(n - first, parts - 1):
            yield (first,) + rest


def composition_count(n: int, parts: int) -> int:
    return math.comb(n + parts - 1, parts - 1)


def _check_budget(n: int, parts: int, budget: Optional[int]) -> None:
    cap = DEFAULT_BUDGET if budget is None else budget
    if composition_count(n, parts) > cap:
        raise BudgetExceeded(
            f"{composition_count(n, parts)} compositions exceed budget {cap}")


def weighted_term(spec: SequenceSpec, n: int,
                  budget: Optional[int] = None) -> Union[Cyclo, Poly]:
    """a_n for the family: sum over compositions of (prod w_i^p_i) * multinomial^k."""
    return aux_term(spec, n, EpsVector((0,) * spec.N), budget)


def aux_term(spec: SequenceSpec, n: int, eps: EpsVector,
             budget: Optional[int] = None) -> Union[Cyclo, Poly]:
    """Auxiliary term: the weighted sum with an extra prod p_i^eps_i factor.

    0^0 counts as 1, so compositions with p_i = 0 still contribute when
    eps_i = 0.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    eps.validate(spec)
    _check_budget(n, spec.N, budget)
    weights = spec.weight_values()
    symbolic = spec.is_symbolic
    total: Union[Cyclo, Poly] = Poly.zero() if symbolic else Cyclo.of(0)
    for parts in compositions(n, spec.N):
        mono = 1
        for p, e in zip(parts, eps.exps):
            if e:
                if p == 0:
                    mono = 0
                    break
                mono *= p**e
        if mono == 0:
            continue
        coef = Fraction(mono) * Fraction(multinomial(n, parts)) ** spec.power
        term: Union[Cyclo, Poly] = Cyclo.of(coef)
        for w, p in zip(weights, parts):
            if p:
                term = term * w**p
        total = total + term
    return total


def power_term(a, b, k: int, n: int) -> Union[Cyclo, Poly]:
    """sum_p a^p b^(n-p) C(n,p)^k, the two-weight higher-power sum."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if k < 2:
        raise ValueError("power must be at least 2")
    return power_aux_term(a, b, k, n, 0, 0)


def power_aux_term(a, b, k: int, n: int, i: int, j: int) -> Union[Cyclo, Poly]:
    """sum over p+q=n of a^p b^q p^i q^j C(n,p)^k."""
    if n < 0:
        raise ValueError("n must be non-negative")
    av = Poly.var(a) if isinstance(a, str) else Cyclo.of(a)
    bv = Poly.var(b) if isinstance(b, str) else Cyclo.of(b)
    symbolic = isinstance(a, str) or isinstance(b, str)
    total: Union[Cyclo, Poly] = Poly.zero() if symbolic else Cyclo.of(0)
    for p in range(n + 1):
        q = n - p
        if (i and p == 0) or (j and q == 0):
            continue
        coef = Fraction(p**i * q**j) * Fraction(math.comb(n, p)) ** k
        term: Union[Cyclo, Poly] = Cyclo.of(coef)
        if p:
            term = term * av**p
        if q:
            term = term * bv**q
        total = total + term
    return total


def check_aux_relation(spec: SequenceSpec, n: int, eps: EpsVector) -> bool:
    """Check the level-raising/index-lowering identity at (n, eps).

    n * a_n^eps  ==  sum_i (1 - eps_i) a_n^(eps+e_i)
                     + n^2 * sum_i w_i eps_i a_(n-1)^(eps-e_i)
    for k = 2 and eps entries in {0, 1}.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if spec.power != 2:
        raise ValueError("the auxiliary relation is for k = 2")
    eps.validate(spec)
    if any(e not in (0, 1) for e in eps.exps):
        raise ValueError("eps entries must be 0 or 1 here")
    weights = spec.weight_values()
    left = n * aux_term(spec, n, eps)
    right: Union[Cyclo, Poly] = Poly.zero() if spec.is_symbolic else Cyclo.of(0)
    for i, e in enumerate(eps.exps):
        if e == 0:
            right = right + aux_term(spec, n, eps.raised(i))
        else:
            right = right + (n * n) * weights[i] * aux_term(spec, n - 1, eps.lowered(i))
    diff = left - right
    return diff.is_zero()


# -- fast factorized evaluation ------------------------------------------------


def weighted_sequence(spec: SequenceSpec, n_max: int) -> List[Union[Cyclo, Poly]]:
    """a_0 .. a_{n_max} via the binomial peel-off recursion.

    Splitting the last part out of the multinomial coefficient gives
    row_N[n] = sum_p C(n,p)^k w_N^p row_{N-1}[n-p]; this is the same
    defining sum, reorganized, and costs O(N n^2) scalar operations.
    """
    if spec.power != 2 and spec.N != 2:
        raise ValueError("fast evaluation supports k > 2 only for N = 2")
    weights = spec.weight_values()
    k = spec.power
    zero: Union[Cyclo, Poly] = Poly.zero() if spec.is_symbolic else Cyclo.of(0)
    w0 = weights[0]
    row = [zero + w0**n for n in range(n_max + 1)]
    for w in weights[1:]:
        powers = [Cyclo.of(1) if not isinstance(w, Poly) else Poly.const(1)]
        for _ in range(n_max):
            powers.append(powers[-1] * w)
        new = []
        for n in range(n_max + 1):
            acc = zero
            for p in range(n + 1):
                c = Fraction(math.comb(n, p)) ** k
                acc = acc + Cyclo.of(c) * powers[p] * row[n - p]
            new.append(acc)
        row = new
    return row


def unit_sequence(N: int, n_max: int) -> List[Fraction]:
    """a_n^N with all weights 1, as plain Fractions."""
    spec = SequenceSpec.numeric([1] * N)
    return [v.as_fraction() for v in weighted_sequence(spec, n_max)]


def power_sequence(a, b, k: int, n_max: int) -> List[Union[Cyclo, Poly]]:
    """c_n^{a,b,k} for n = 0 .. n_max."""
    return [power_term(a, b, k, n) for n in range(n_max + 1)]
