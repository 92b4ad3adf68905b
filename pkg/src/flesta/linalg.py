"""
Linear algebra back ends.

Exact linear algebra over ℚ goes through sympy's DomainMatrix. Linear algebra
over the Novikov field is done by Gauss-Jordan elimination on
:class:`NovikovMatrix`, with divisions truncated at a working energy cap and
pivots chosen by minimal valuation.
"""

import logging
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from .novikov import NovikovScalar, nov_invert

logger = logging.getLogger(__name__)

Vector = List[Fraction]


def _to_qq(x: Fraction):
    return QQ(x.numerator, x.denominator)


def _from_qq(x) -> Fraction:
    return Fraction(int(x.numerator), int(x.denominator))


def qq_matrix(rows: Sequence[Sequence[Fraction]], ncols: int) -> DomainMatrix:
    return DomainMatrix([[_to_qq(Fraction(v)) for v in row] for row in rows], (len(rows), ncols), QQ)


def rank(rows: Sequence[Sequence[Fraction]], ncols: int) -> int:
    """Rank over ℚ of the matrix with the given rows."""
    if not rows or ncols == 0:
        return 0
    return qq_matrix(rows, ncols).rank()


def _columns_rref(columns: Sequence[Sequence[Fraction]], dim: int) -> Tuple[List[List[Fraction]], Tuple[int, ...]]:
    rows = [[Fraction(col[i]) for col in columns] for i in range(dim)]
    reduced, pivots = qq_matrix(rows, len(columns)).rref()
    return [[_from_qq(v) for v in row] for row in reduced.to_list()], tuple(pivots)


def solve_in_span(basis: Sequence[Sequence[Fraction]], target: Sequence[Fraction], dim: int) -> Optional[Vector]:
    """Coefficients c with Σ cᵢ basisᵢ = target, or None if target is outside the span."""
    if dim == 0:
        return [Fraction(0)] * len(basis)
    if not basis:
        return [] if all(Fraction(t) == 0 for t in target) else None
    reduced, pivots = _columns_rref(list(basis) + [list(target)], dim)
    last = len(basis)
    if last in pivots:
        return None
    coeffs = [Fraction(0)] * len(basis)
    for row, col in enumerate(pivots):
        coeffs[col] = reduced[row][last]
    return coeffs


class NovikovMatrix:
    """A dense matrix over the Novikov field, truncated at a working cap.

    Row and column labels only serve to make pivot choices deterministic.
    """

    def __init__(self, entries: Sequence[Sequence[NovikovScalar]], cap: Fraction,
                 row_labels: Optional[Sequence[str]] = None, col_labels: Optional[Sequence[str]] = None):
        self.cap = Fraction(cap)
        self.entries: List[List[NovikovScalar]] = [[e.truncate(self.cap) for e in row] for row in entries]
        self.nrows = len(self.entries)
        self.ncols = len(self.entries[0]) if self.entries else len(col_labels or [])
        self.row_labels = list(row_labels) if row_labels is not None else [f"{i:06d}" for i in range(self.nrows)]
        self.col_labels = list(col_labels) if col_labels is not None else [f"{j:06d}" for j in range(self.ncols)]

    def _eliminate(self, extra: Optional[List[NovikovScalar]] = None):
        """Gauss-Jordan elimination; returns (reduced rows, pivot (row, col) list, reduced extra column)."""
        a = [list(row) for row in self.entries]
        b = list(extra) if extra is not None else None
        row_order = list(self.row_labels)
        pivots: List[Tuple[int, int]] = []
        used_cols: set = set()
        r = 0
        while r < self.nrows:
            best = None
            for i in range(r, self.nrows):
                for j in range(self.ncols):
                    if j in used_cols or a[i][j].is_zero:
                        continue
                    key = (a[i][j].valuation(), self.col_labels[j], row_order[i])
                    if best is None or key < best[0]:
                        best = (key, i, j)
            if best is None:
                break
            _, i, j = best
            a[r], a[i] = a[i], a[r]
            row_order[r], row_order[i] = row_order[i], row_order[r]
            if b is not None:
                b[r], b[i] = b[i], b[r]
            inv = nov_invert(a[r][j], self.cap)
            a[r] = [(x * inv).truncate(self.cap) for x in a[r]]
            if b is not None:
                b[r] = (b[r] * inv).truncate(self.cap)
            for k in range(self.nrows):
                if k == r or a[k][j].is_zero:
                    continue
                factor = a[k][j]
                a[k] = [(x - factor * y).truncate(self.cap) for x, y in zip(a[k], a[r])]
                if b is not None:
                    b[k] = (b[k] - factor * b[r]).truncate(self.cap)
            pivots.append((r, j))
            used_cols.add(j)
            r += 1
        return a, pivots, b

    def rank(self) -> int:
        """Rank below the working cap."""
        if self.nrows == 0 or self.ncols == 0:
            return 0
        _, pivots, _ = self._eliminate()
        return len(pivots)

    def nullspace(self) -> List[List[NovikovScalar]]:
        """Basis of the kernel {x : M x = 0} below the cap."""
        if self.nrows == 0:
            return [[NovikovScalar.one(self.cap) if i == j else NovikovScalar.zero(self.cap)
                     for j in range(self.ncols)] for i in range(self.ncols)]
        reduced, pivots, _ = self._eliminate()
        pivot_cols = {c: r for r, c in pivots}
        basis = []
        for free in range(self.ncols):
            if free in pivot_cols:
                continue
            vec = [NovikovScalar.zero(self.cap) for _ in range(self.ncols)]
            vec[free] = NovikovScalar.one(self.cap)
            for c, r in pivot_cols.items():
                vec[c] = -reduced[r][free]
            basis.append(vec)
        return basis

    def solve(self, target: Sequence[NovikovScalar]) -> Optional[List[NovikovScalar]]:
        """A solution x of M x = target below the cap, or None."""
        if self.nrows == 0:
            return [NovikovScalar.zero(self.cap) for _ in range(self.ncols)]
        _, pivots, b = self._eliminate([t.truncate(self.cap) for t in target])
        assert b is not None
        for i in range(len(pivots), self.nrows):
            if not b[i].is_zero:
                return None
        x = [NovikovScalar.zero(self.cap) for _ in range(self.ncols)]
        for r, c in pivots:
            x[c] = b[r]
        return x

    def apply(self, vector: Sequence[NovikovScalar]) -> List[NovikovScalar]:
        out = []
        for row in self.entries:
            acc = NovikovScalar.zero(self.cap)
            for a, v in zip(row, vector):
                if not a.is_zero and not v.is_zero:
                    acc = acc + a * v
            out.append(acc.truncate(self.cap))
        return out


def novikov_span_rank(vectors: Sequence[Sequence[NovikovScalar]], dim: int, cap: Fraction) -> int:
    """Dimension of the span of Novikov vectors (columns) in Λ^dim."""
    if not vectors or dim == 0:
        return 0
    rows = [[vec[i] for vec in vectors] for i in range(dim)]
    return NovikovMatrix(rows, cap).rank()
