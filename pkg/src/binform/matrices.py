"""Matrices of polynomials: exact determinants and ranks.

Determinants use cofactor expansion up to 4x4 and fraction-free Bareiss
elimination beyond that; every Bareiss division is checked to be exact.
"""

from __future__ import annotations

from typing import List, Optional, Sequence

from .errors import ConsistencyError, DimensionError, UnsupportedInputError
from .poly import MPoly, QQ, Universe


class PolyMatrix:
    """Rectangular matrix of MPoly entries with recorded row/column labels."""

    def __init__(self, universe: Universe, rows: int, cols: int,
                 entries: Sequence[MPoly],
                 row_basis: Optional[Sequence[str]] = None,
                 col_basis: Optional[Sequence[str]] = None):
        if len(entries) != rows * cols:
            raise DimensionError("entries length does not match rows * cols")
        row_basis = list(row_basis) if row_basis is not None else [str(i) for i in range(rows)]
        col_basis = list(col_basis) if col_basis is not None else [str(j) for j in range(cols)]
        if len(row_basis) != rows or len(col_basis) != cols:
            raise DimensionError("basis labels do not match dimensions")
        self.universe = universe
        self.rows = rows
        self.cols = cols
        self.entries: List[MPoly] = list(entries)
        self.row_basis = row_basis
        self.col_basis = col_basis

    def __getitem__(self, rc):
        i, j = rc
        return self.entries[i * self.cols + j]

    def map(self, fn) -> "PolyMatrix":
        return PolyMatrix(self.universe, self.rows, self.cols,
                          [fn(p) for p in self.entries], self.row_basis, self.col_basis)

    def subs(self, assignment) -> "PolyMatrix":
        return self.map(lambda p: p.subs(assignment))

    def drop_col(self, j: int) -> "PolyMatrix":
        entries = [self[i, k] for i in range(self.rows) for k in range(self.cols) if k != j]
        labels = [c for k, c in enumerate(self.col_basis) if k != j]
        return PolyMatrix(self.universe, self.rows, self.cols - 1, entries,
                          self.row_basis, labels)

    def det(self) -> MPoly:
        if self.rows != self.cols:
            raise DimensionError(f"determinant of a {self.rows}x{self.cols} matrix")
        n = self.rows
        if n == 0:
            return MPoly.const(self.universe, 1)
        if n <= 4:
            return self._det_cofactor([self[i, j] for i in range(n) for j in range(n)], n)
        return self._det_bareiss()

    def _det_cofactor(self, flat: List[MPoly], n: int) -> MPoly:
        if n == 1:
            return flat[0]
        acc = MPoly.zero(self.universe)
        sign = 1
        for j in range(n):
            if not flat[j].is_zero():
                minor = [flat[i * n + k] for i in range(1, n) for k in range(n) if k != j]
                term = flat[j] * self._det_cofactor(minor, n - 1)
                acc = acc + (term if sign > 0 else -term)
            sign = -sign
        return acc

    def _det_bareiss(self) -> MPoly:
        n = self.rows
        m = [[self[i, j] for j in range(n)] for i in range(n)]
        sign = 1
        prev = MPoly.const(self.universe, 1)
        for k in range(n - 1):
            if m[k][k].is_zero():
                for i in range(k + 1, n):
                    if not m[i][k].is_zero():
                        m[i], m[k] = m[k], m[i]
                        sign = -sign
                        break
                else:
                    return MPoly.zero(self.universe)
            pivot = m[k][k]
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    elt = pivot * m[i][j] - m[i][k] * m[k][j]
                    # the Bareiss division is exact in an integral domain
                    m[i][j] = elt.divexact(prev)
                m[i][k] = MPoly.zero(self.universe)
            prev = pivot
        det = m[n - 1][n - 1]
        return det if sign > 0 else -det

    def rank_rational(self) -> int:
        """Rank by exact Gaussian elimination; entries must be constants."""
        rows = []
        for i in range(self.rows):
            row = []
            for j in range(self.cols):
                p = self[i, j]
                if not p.is_constant():
                    raise UnsupportedInputError("rank_rational needs specialized entries")
                row.append(p.constant_value())
            rows.append(row)
        rank = 0
        col = 0
        while rank < len(rows) and col < self.cols:
            pivot_row = next((i for i in range(rank, len(rows)) if rows[i][col] != 0), None)
            if pivot_row is None:
                col += 1
                continue
            rows[rank], rows[pivot_row] = rows[pivot_row], rows[rank]
            pv = rows[rank][col]
            for i in range(rank + 1, len(rows)):
                if rows[i][col] != 0:
                    f = rows[i][col] / pv
                    rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank])]
            rank += 1
            col += 1
        return rank

    def maximal_minors(self) -> List[MPoly]:
        """For an n x (n+1) matrix: the n+1 determinants with one column deleted."""
        if self.cols != self.rows + 1:
            raise DimensionError("maximal_minors expects an n x (n+1) matrix")
        return [self.drop_col(j).det() for j in range(self.cols)]


def from_rows(universe: Universe, rows: Sequence[Sequence[MPoly]],
              row_basis=None, col_basis=None) -> PolyMatrix:
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    if any(len(r) != ncols for r in rows):
        raise DimensionError("ragged rows")
    flat = [p for r in rows for p in r]
    return PolyMatrix(universe, nrows, ncols, flat, row_basis, col_basis)


def sylvester_matrix(universe: Universe, coeffs_a: Sequence[MPoly],
                     coeffs_b: Sequence[MPoly]) -> PolyMatrix:
    """Sylvester matrix of two univariate coefficient lists (descending powers).

    coeffs_a has length m+1 for degree m, coeffs_b length n+1 for degree n;
    the matrix is (m+n) x (m+n) with n shifted copies of coeffs_a on top.
    """
    m, n = len(coeffs_a) - 1, len(coeffs_b) - 1
    if m < 0 or n < 0:
        raise DimensionError("empty coefficient list")
    size = m + n
    zero = MPoly.zero(universe)
    rows = []
    for s in range(n):
        rows.append([zero] * s + list(coeffs_a) + [zero] * (size - s - m - 1))
    for s in range(m):
        rows.append([zero] * s + list(coeffs_b) + [zero] * (size - s - n - 1))
    return from_rows(universe, rows)
