"""Recurrence derivation for weighted sums via the auxiliary-space maps.

The level-raising/index-lowering identity turns each auxiliary term
into a combination of terms one level up (same index) and one level
down (previous index).  Split by level parity, these assemble into two
linear maps phi0, phi1 between the staggered spaces

    W_n^parity = span{ a_{n+s}^eps : sum(eps) = 2 s + parity },

whose composition psi = phi1 . phi0 steps the index down by one.
Images of a_n, a_{n-1}, ... under iterated psi live in one space of
dimension 2^(N-1), so stacking them as columns and computing an exact
kernel yields a recurrence with at most 2^(N-1)+1 terms.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import List, Optional, Sequence, Tuple, Union

from .cyclo import Cyclo
from .matrixops import Matrix, matrix_nullspace, normalize_vector
from .oracle import EpsVector, SequenceSpec, weighted_sequence
from .poly import Poly
from .ratfunc import RatFunc
from .recurrence import Recurrence


class DimensionBoundError(RuntimeError):
    """No kernel appeared within the guaranteed dimension bound."""


@dataclass(frozen=True)
class SpaceBasis:
    """Ordered basis of W_n^parity: (shift, eps) with sum(eps) = 2*shift+parity."""

    N: int
    parity: int
    entries: Tuple[Tuple[int, EpsVector], ...]

    def index(self, shift: int, eps: EpsVector) -> int:
        return self.entries.index((shift, eps))

    def __len__(self) -> int:
        return len(self.entries)


@lru_cache(maxsize=None)
def enumerate_basis(N: int, parity: int) -> SpaceBasis:
    """All (shift, eps) with eps in {0,1}^N at level 2*shift + parity."""
    if N < 2:
        raise ValueError("N must be at least 2")
    if parity not in (0, 1):
        raise ValueError("parity must be 0 or 1")
    entries = []
    shift = 0
    while 2 * shift + parity <= N:
        level = 2 * shift + parity
        for ones in combinations(range(N), level):
            exps = tuple(1 if i in ones else 0 for i in range(N))
            entries.append((shift, EpsVector(exps)))
        shift += 1
    entries.sort(key=lambda se: (se[0], se[1].exps))
    return SpaceBasis(N, parity, tuple(entries))


def _weight_exprs(spec: SequenceSpec) -> List[Union[Cyclo, Poly]]:
    if spec.has_zero_weight():
        raise ValueError("zero weight unsupported")
    return spec.weight_values()


def build_phi(spec: SequenceSpec, parity: int,
              src_basis: Optional[SpaceBasis] = None,
              dst_basis: Optional[SpaceBasis] = None) -> Matrix:
    """Matrix of phi^parity (column convention: image coords = M @ source).

    phi^0 : W_n^0 -> W_n^1 and phi^1 : W_n^1 -> W_{n-1}^0; a source
    element at shift s sits at index n+s, contributing 1/(n+s) to each
    raised target and (n+s) * weight to each lowered one.
    """
    if spec.power != 2:
        raise ValueError("the auxiliary-space maps require k = 2")
    weights = _weight_exprs(spec)
    src = src_basis or enumerate_basis(spec.N, parity)
    dst = dst_basis or enumerate_basis(spec.N, 1 - parity)
    n = Poly.var("n")
    cols = []
    for shift, eps in src.entries:
        m = n + shift
        col = [RatFunc.zero() for _ in range(len(dst))]
        for i, e in enumerate(eps.exps):
            if e == 0:
                target_shift = shift if parity == 0 else shift + 1
                idx = dst.index(target_shift, eps.raised(i))
                col[idx] = col[idx] + RatFunc(Poly.const(1), m)
            else:
                target_shift = shift - 1 if parity == 0 else shift
                idx = dst.index(target_shift, eps.lowered(i))
                col[idx] = col[idx] + RatFunc(m) * weights[i]
        cols.append(col)
    return Matrix([[cols[j][i] for j in range(len(src))]
                   for i in range(len(dst))])


def build_psi(spec: SequenceSpec) -> Matrix:
    """psi_n = phi^1 . phi^0 : W_n^0 -> W_{n-1}^0 as an exact matrix."""
    return build_phi(spec, 1) @ build_phi(spec, 0)


def _psi_shifted(psi: Matrix, shift: int) -> Matrix:
    if shift == 0:
        return psi
    n = Poly.var("n")
    return psi.substitute({"n": n - shift})


def stack_columns(spec: SequenceSpec, M: int) -> Matrix:
    """Images of a_n, ..., a_{n-M} in W_{n-M}^0, as columns 0..M.

    Column j is psi_{n-M+1} . ... . psi_{n-j} applied to the unit
    vector at (shift 0, eps = 0); column M is that unit vector itself.
    """
    if M < 1:
        if M == 0:
            basis = enumerate_basis(spec.N, 0)
            return Matrix([[RatFunc.of(1)] if i == 0 else [RatFunc.zero()]
                           for i in range(len(basis))])
        raise ValueError("M must be non-negative")
    psi = build_psi(spec)
    size = psi.rows
    cols: List[List[RatFunc]] = []
    unit = [RatFunc.of(1) if i == 0 else RatFunc.zero() for i in range(size)]
    cols.append(unit)  # column M
    product = Matrix.identity(size)
    for step in range(1, M + 1):
        product = product @ _psi_shifted(psi, M - step)
        cols.append(product.column(0))  # column M - step
    cols.reverse()
    return Matrix([[cols[j][i] for j in range(M + 1)] for i in range(size)])


def _kernel_choice(basis_vectors: List[List[Poly]]) -> List[Poly]:
    """Deterministic pick: smallest last-nonzero index, then lowest total
    degree, then lexicographically smallest string form."""
    from .serialize import poly_to_str

    def last_nonzero(vec):
        return max(i for i, p in enumerate(vec) if not p.is_zero())

    def total_degree(vec):
        return sum(max(p.total_degree(), 0) for p in vec)

    def text(vec):
        return tuple(poly_to_str(p) for p in vec)

    return min(basis_vectors, key=lambda v: (last_nonzero(v), total_degree(v), text(v)))


SYMBOLIC_N_LIMIT = 3
NUMERIC_N_LIMIT = 5


def derive_recurrence(spec: SequenceSpec, allow_large: bool = False) -> Recurrence:
    """Find the shortest stacked-column kernel and read off the recurrence.

    Searches M = 1 .. 2^(N-1) for the first nontrivial kernel of the
    stacked matrix; the chosen kernel vector, cleared of denominators,
    gives the coefficients of sum_k c_k(n) a_{n-k} = 0.  Numeric
    results are re-checked against the enumeration oracle before being
    returned.
    """
    if spec.power != 2:
        raise ValueError("derive_recurrence requires k = 2")
    if spec.is_symbolic and spec.N > SYMBOLIC_N_LIMIT and not allow_large:
        raise ValueError(
            f"symbolic derivation for N > {SYMBOLIC_N_LIMIT} is refused by "
            "default (pass allow_large=True to override)")
    if not spec.is_symbolic and spec.N > NUMERIC_N_LIMIT and not allow_large:
        raise ValueError(
            f"numeric derivation for N > {NUMERIC_N_LIMIT} is refused by "
            "default (pass allow_large=True to override)")
    if spec.has_zero_weight():
        raise ValueError("zero weight unsupported")

    psi = build_psi(spec)
    size = psi.rows
    bound = 2 ** (spec.N - 1)
    unit = [RatFunc.of(1) if i == 0 else RatFunc.zero() for i in range(size)]
    columns: List[List[RatFunc]] = [unit]
    for M in range(1, bound + 1):
        shifted = _psi_shifted(psi, M - 1)
        columns = [shifted.apply_to(col) for col in columns]
        columns.append(unit)
        stacked = Matrix([[columns[j][i] for j in range(M + 1)]
                          for i in range(size)])
        kernel = matrix_nullspace(stacked)
        if kernel:
            vec = _kernel_choice(kernel)
            rec = Recurrence(list(vec))
            if not spec.is_symbolic:
                _oracle_check(rec, spec, rec.order + 10)
            return rec
    raise DimensionBoundError("dimension bound violated")


def _oracle_check(rec: Recurrence, spec: SequenceSpec, n_max: int) -> None:
    series = weighted_sequence(spec, n_max)
    for m in range(rec.order, n_max + 1):
        if not rec.residual(m, series).is_zero():
            raise AssertionError(
                f"derived recurrence fails oracle check at n = {m}")


# -- the explicit order-4 relation for three weights ---------------------------


def n3_recurrence(a=None, b=None, c=None) -> Recurrence:
    """The explicit 5-coefficient relation R(n) for the N = 3 family.

    Arguments may be scalars or omitted (None) for the symbolic form in
    weight variables a, b, c.  Returned unnormalized, exactly as the
    closed form is written.
    """
    av = Poly.var("a") if a is None else Poly.const(Cyclo.of(a))
    bv = Poly.var("b") if b is None else Poly.const(Cyclo.of(b))
    cv = Poly.var("c") if c is None else Poly.const(Cyclo.of(c))
    n = Poly.var("n")
    A = av + bv + cv
    s = av**2 + bv**2 + cv**2 - 2 * av * bv - 2 * av * cv - 2 * cv * bv
    abc = av * bv * cv

    def F(p: int) -> Poly:
        return 4 * n - p

    c0 = F(11) * F(7) * n**2
    c1 = -A * F(11) * (2 * (n - 1) * (2 * n - 3) * (4 * n - 1) + 3)
    c2 = (2 * n - 3) ** 2 * F(11) * F(3) * A**2 \
        + (F(3) * F(11) * (n - 2) * (n - 1) - 3) * s
    c3 = -F(9) * F(3) * (s * A * (4 * n**2 - 18 * n + 19) + 4 * abc * F(11) * F(7))
    c4 = F(7) * F(3) * s**2 * (n - 3) ** 2
    return Recurrence([c0, c1, c2, c3, c4], normalize=False)
