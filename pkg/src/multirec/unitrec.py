"""Closed-form recurrences and operators for the all-ones weight case.

Three independent routes to the same answer live here: the explicit
index-sequence formula (``unit_recurrence``), the generating-polynomial
recursion (``unit_recurrence_via_polys``), and the direct operator form
(``closed_form_operator``).  The coefficient of a_{n-k} is a sum over
strictly decreasing index sequences u_1 > u_2 + 1 > ... (gap >= 2) with
1 <= u_i <= N, each contributing

    prod_i -u_i (N+1-u_i) * n^(N+2-u_1) (n-1)^(u_1-u_2) ...
        (n-k+1)^(u_{k-1}-u_k) (n-k)^(u_k-1)

before the common division by n^2.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator, List, Optional, Tuple

from .cyclo import Cyclo
from .poly import Poly, poly_exact_div
from .recurrence import Recurrence, ThetaOperator, to_theta_operator


def g_factor(N: int, j: int) -> int:
    """(N-1)(N-2)...(N-j); empty product 1, zero once j reaches N."""
    if N < 1 or j < 0:
        raise ValueError("need N >= 1 and j >= 0")
    out = 1
    for i in range(1, j + 1):
        out *= N - i
    return out


def index_sequences(max_start: int, length: int) -> Iterator[Tuple[int, ...]]:
    """Strictly decreasing sequences with gaps >= 2, entries in [1, max_start]."""
    if length == 0:
        yield ()
        return
    for first in range(max_start, 0, -1):
        for rest in index_sequences(first - 2, length - 1):
            yield (first,) + rest


def _coefficient(N: int, k: int) -> Poly:
    """The a_{n-k} coefficient of the un-normalized closed-form recurrence."""
    n = Poly.var("n")
    total = Poly.zero(("n",))
    for seq in index_sequences(N, k):
        scale = 1
        for u in seq:
            scale *= -u * (N + 1 - u)
        term = Poly.const(scale, ("n",))
        if k == 0:
            term = term * n ** (N + 1)
        else:
            term = term * n ** (N + 2 - seq[0])
            for i in range(k - 1):
                term = term * (n - (i + 1)) ** (seq[i] - seq[i + 1])
            term = term * (n - k) ** (seq[-1] - 1)
        total = total + term
    return total


@lru_cache(maxsize=None)
def unit_recurrence_raw(N: int) -> Recurrence:
    """The closed-form recurrence before dividing out the n^2 factor."""
    if N < 2:
        raise ValueError("N must be at least 2")
    coeffs: List[Poly] = []
    k = 0
    while True:
        c = _coefficient(N, k)
        if c.is_zero() and k > 0:
            break
        coeffs.append(c)
        k += 1
    return Recurrence(coeffs, normalize=False)


@lru_cache(maxsize=None)
def unit_recurrence(N: int) -> Recurrence:
    """The recurrence for the all-ones family, normalized as in the tables."""
    raw = unit_recurrence_raw(N)
    n2 = Poly.var("n") ** 2
    divided = [c if c.is_zero() else poly_exact_div(c, n2) for c in raw.coeffs]
    return Recurrence(divided)


def generating_poly(j: int, N: Optional[int] = None) -> Poly:
    """p_j from the recursion p_j = n p_{j-1} - j n^2 (N-j+1) x p_{j-2}(n-1).

    ``N`` may be left symbolic (variable "N"); p_{-1} = 1, p_0 = n.
    """
    if j < -1:
        raise ValueError("index must be >= -1")
    n = Poly.var("n")
    x = Poly.var("x")
    Nv: Poly = Poly.var("N") if N is None else Poly.const(N)
    prev2 = Poly.const(1)  # p_{-1}
    prev1 = n               # p_0
    if j == -1:
        return prev2
    if j == 0:
        return prev1
    for jj in range(1, j + 1):
        cur = n * prev1 - jj * n**2 * (Nv - (jj - 1)) * x * prev2.shift_var("n", -1)
        prev2, prev1 = prev1, cur
    return prev1


@lru_cache(maxsize=None)
def unit_recurrence_via_polys(N: int) -> Recurrence:
    """Read the recurrence off the x-coefficients of p_N(N, n, x)."""
    if N < 2:
        raise ValueError("N must be at least 2")
    p = generating_poly(N, N)
    coeffs = [p.coefficient_in("x", k) for k in range(p.degree_in("x") + 1)]
    return Recurrence(coeffs)


@lru_cache(maxsize=None)
def unit_theta_operator(N: int) -> ThetaOperator:
    """The differential operator annihilating sum a_n^N t^n."""
    return to_theta_operator(unit_recurrence(N))


@lru_cache(maxsize=None)
def closed_form_operator(N: int) -> ThetaOperator:
    """The operator built directly from the index-sequence formula.

    Same admissible sequences as the recurrence coefficients, with
    n^e (n-i)^e factors replaced by (T+k)^e (T+k-i)^e; equals the
    conversion of the un-normalized recurrence exactly.
    """
    if N < 2:
        raise ValueError("N must be at least 2")
    t = Poly.var("t")
    theta = Poly.var("_theta")
    pieces: List[Poly] = []
    k = 0
    while True:
        level = Poly.zero(("_theta",))
        found = False
        for seq in index_sequences(N, k):
            found = True
            scale = 1
            for u in seq:
                scale *= -u * (N + 1 - u)
            term = Poly.const(scale)
            if k == 0:
                term = term * theta ** (N + 1)
            else:
                term = term * (theta + k) ** (N + 2 - seq[0])
                for i in range(k - 1):
                    term = term * (theta + (k - i - 1)) ** (seq[i] - seq[i + 1])
                term = term * theta ** (seq[-1] - 1)
            level = level + term
        if not found and k > 0:
            break
        pieces.append(level)
        k += 1
    degree = max(p.degree_in("_theta") for p in pieces)
    coeffs = [Poly.zero(("t",)) for _ in range(degree + 1)]
    for k, piece in enumerate(pieces):
        for d in range(degree + 1):
            part = piece.coefficient_in("_theta", d)
            if part.is_zero():
                continue
            coeffs[d] = coeffs[d] + part * t**k
    return ThetaOperator(coeffs)


def alternative_second_coefficient(N: int) -> Poly:
    """The a_{n-1} coefficient in the alternative difference-of-powers form.

    Relates to the closed form by raw_c1 = -n^2 * (this polynomial):
    the n^2 is the factor divided out in normalization and the sign is
    the side of the equation the term is quoted on.
    """
    n = Poly.var("n")
    return N * (n ** (N + 2) - (n - 1) ** (N + 2)) \
        - (N + 2) * n * (n - 1) * (n**N - (n - 1) ** N)
