"""Dense matrices of rational functions with exact rank and nullspace.

Elimination is fraction-free: rows are first cleared of denominators,
then reduced by cross-multiplication (no division ever happens inside
the elimination), with the polynomial content of every produced row
stripped to keep intermediate entries small.  Pivots are chosen by
least total polynomial size.
"""

from __future__ import annotations

from typing import List, Sequence

from .cyclo import Cyclo
from .poly import Poly, poly_exact_div, poly_gcd, poly_lcm, primitive_normalize
from .ratfunc import RatFunc


class Matrix:
    """A rows x cols matrix of :class:`RatFunc` entries."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Sequence[Sequence]):
        self.entries = [[RatFunc.of(e) for e in row] for row in entries]
        self.rows = len(self.entries)
        self.cols = len(self.entries[0]) if self.entries else 0
        if any(len(row) != self.cols for row in self.entries):
            raise ValueError("ragged matrix")

    @staticmethod
    def identity(size: int) -> "Matrix":
        return Matrix([[RatFunc.of(1) if i == j else RatFunc.zero()
                        for j in range(size)] for i in range(size)])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.rows, self.cols) == (other.rows, other.cols) and \
            self.entries == other.entries

    def __repr__(self):
        body = "; ".join(", ".join(str(e) for e in row) for row in self.entries)
        return f"Matrix[{body}]"

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ "
                             f"{other.rows}x{other.cols}")
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = RatFunc.zero()
                for k in range(self.cols):
                    a = self.entries[i][k]
                    b = other.entries[k][j]
                    if a.is_zero() or b.is_zero():
                        continue
                    acc = acc + a * b
                row.append(acc)
            out.append(row)
        return Matrix(out)

    def __mul__(self, scalar) -> "Matrix":
        s = RatFunc.of(scalar)
        return Matrix([[e * s for e in row] for row in self.entries])

    def __add__(self, other: "Matrix") -> "Matrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return Matrix([[a + b for a, b in zip(r1, r2)]
                       for r1, r2 in zip(self.entries, other.entries)])

    def transpose(self) -> "Matrix":
        return Matrix([[self.entries[i][j] for i in range(self.rows)]
                       for j in range(self.cols)])

    def column(self, j: int) -> List[RatFunc]:
        return [self.entries[i][j] for i in range(self.rows)]

    def hstack(self, cols: Sequence[Sequence[RatFunc]]) -> "Matrix":
        extra = [list(c) for c in cols]
        return Matrix([row + [c[i] for c in extra]
                       for i, row in enumerate(self.entries)])

    def substitute(self, assignment) -> "Matrix":
        return Matrix([[e.substitute(assignment) for e in row]
                       for row in self.entries])

    def apply_to(self, vec: Sequence[RatFunc]) -> List[RatFunc]:
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        out = []
        for i in range(self.rows):
            acc = RatFunc.zero()
            for k in range(self.cols):
                a = self.entries[i][k]
                b = RatFunc.of(vec[k])
                if a.is_zero() or b.is_zero():
                    continue
                acc = acc + a * b
            out.append(acc)
        return out


def _poly_size(p: Poly) -> int:
    return len(p.terms) + p.total_degree()


def _clear_row(row: Sequence[RatFunc]) -> List[Poly]:
    """Scale a row by the lcm of its denominators, then strip content."""
    lcm = Poly.const(1)
    for e in row:
        if not e.is_zero() and not e.den.is_constant():
            lcm = poly_lcm(lcm, e.den)
    cleared = []
    for e in row:
        if e.is_zero():
            cleared.append(Poly.zero(lcm.vars))
        else:
            cleared.append(e.num * poly_exact_div(lcm, e.den))
    return _strip_row_content(cleared)


def _strip_row_content(row: List[Poly]) -> List[Poly]:
    g = None
    for p in row:
        if p.is_zero():
            continue
        g = p if g is None else poly_gcd(g, p)
        if g.is_constant():
            break
    if g is None:
        return row
    if not g.is_constant():
        row = [p if p.is_zero() else poly_exact_div(p, g) for p in row]
    # units are content too: make the first entry monic, then integer-primitive
    lead = next(p for p in row if not p.is_zero())
    row = [p.scale(lead.leading()[1].inverse()) for p in row]
    content = _joint_content(row)
    inv = Cyclo.of(1 / content)
    return [p.scale(inv) for p in row]


def _joint_content(row: Sequence[Poly]):
    from fractions import Fraction
    import math

    g, l = 0, 1
    for p in row:
        for coef in p.terms.values():
            for fr in coef.co:
                if fr:
                    g = math.gcd(g, abs(fr.numerator))
                    l = l * fr.denominator // math.gcd(l, fr.denominator)
    return Fraction(g, l)


def _echelon(matrix: "Matrix"):
    """Fraction-free row echelon: returns (rows, pivot column list)."""
    work = [_clear_row(r) for r in matrix.entries]
    pivots = []
    piv_r = 0
    for col in range(matrix.cols):
        candidates = [i for i in range(piv_r, len(work)) if not work[i][col].is_zero()]
        if not candidates:
            continue
        best = min(candidates, key=lambda i: _poly_size(work[i][col]))
        work[piv_r], work[best] = work[best], work[piv_r]
        pivot_row = work[piv_r]
        pivot = pivot_row[col]
        for i in range(piv_r + 1, len(work)):
            lead = work[i][col]
            if lead.is_zero():
                continue
            new_row = [pivot * work[i][j] - lead * pivot_row[j]
                       for j in range(matrix.cols)]
            work[i] = _strip_row_content(new_row)
        pivots.append(col)
        piv_r += 1
        if piv_r == len(work):
            break
    return work, pivots


def matrix_rank(matrix: Matrix) -> int:
    """Exact rank over the fraction field."""
    _, pivots = _echelon(matrix)
    return len(pivots)


def matrix_nullspace(matrix: Matrix) -> List[List[Poly]]:
    """A basis of the exact right kernel, one vector per free column.

    Vectors are cleared of denominators and content-normalized, with
    the first nonzero entry given a positive leading coordinate.
    """
    work, pivots = _echelon(matrix)
    free = [c for c in range(matrix.cols) if c not in pivots]
    basis = []
    for fc in free:
        sol = [RatFunc.zero() for _ in range(matrix.cols)]
        sol[fc] = RatFunc.of(1)
        for r in range(len(pivots) - 1, -1, -1):
            pc = pivots[r]
            acc = RatFunc.zero()
            for c in range(pc + 1, matrix.cols):
                if sol[c].is_zero() or work[r][c].is_zero():
                    continue
                acc = acc + RatFunc.of(work[r][c]) * sol[c]
            sol[pc] = -acc / RatFunc.of(work[r][pc])
        basis.append(normalize_vector(sol))
    return basis


def normalize_vector(vec: Sequence[RatFunc]) -> List[Poly]:
    """Clear denominators and strip common content, fixing the sign."""
    vec = [RatFunc.of(v) for v in vec]
    lcm = Poly.const(1)
    for v in vec:
        if not v.is_zero() and not v.den.is_constant():
            lcm = poly_lcm(lcm, v.den)
    polys = []
    for v in vec:
        if v.is_zero():
            polys.append(Poly.zero(lcm.vars))
        else:
            polys.append(v.num * poly_exact_div(lcm, v.den))
    return _strip_row_content(polys)


def kernel_residual(matrix: Matrix, vector: Sequence) -> List[RatFunc]:
    """M . v, for checking that kernel vectors multiply to zero exactly."""
    return matrix.apply_to([RatFunc.of(v) for v in vector])
