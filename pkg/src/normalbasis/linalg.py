"""Exact rational linear algebra: Bareiss determinants, ranks, kernels.

Everything here works on Fractions or Python ints; no floating point is
involved, so determinant and kernel results can serve as certificates.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence


class MatrixShapeError(ValueError):
    """Raised when a matrix operation gets incompatible dimensions."""


def bareiss_determinant_int(matrix: list[list[int]]) -> int:
    """Determinant of a square integer matrix by fraction-free elimination."""
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise MatrixShapeError("determinant requires a square matrix")
    if n == 0:
        return 1
    m = [row[:] for row in matrix]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            pivot_row = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if pivot_row is None:
                return 0
            m[k], m[pivot_row] = m[pivot_row], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def _clear_row_denominators(row: Sequence[Fraction]) -> list[int]:
    lcm = 1
    for x in row:
        lcm = lcm * x.denominator // math.gcd(lcm, x.denominator)
    return [int(x * lcm) for x in row]


class RationalMatrix:
    """A rectangular matrix of Fractions with exact elimination routines."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable]):
        converted = tuple(tuple(Fraction(x) for x in row) for row in rows)
        if converted and any(len(r) != len(converted[0]) for r in converted):
            raise MatrixShapeError("ragged rows")
        object.__setattr__(self, "rows", converted)
        object.__setattr__(self, "nrows", len(converted))
        object.__setattr__(self, "ncols", len(converted[0]) if converted else 0)

    def __setattr__(self, *args):
        raise AttributeError("RationalMatrix is immutable")

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls([[Fraction(int(i == j)) for j in range(n)] for i in range(n)])

    @property
    def dims(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(zip(*self.rows)) if self.rows else RationalMatrix([])

    def matmul(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.ncols != other.nrows:
            raise MatrixShapeError("matmul dimension mismatch")
        return RationalMatrix(
            [
                [sum((self.rows[i][k] * other.rows[k][j] for k in range(self.ncols)), Fraction(0)) for j in range(other.ncols)]
                for i in range(self.nrows)
            ]
        )

    def matvec(self, vec: Sequence) -> tuple[Fraction, ...]:
        if len(vec) != self.ncols:
            raise MatrixShapeError("matvec dimension mismatch")
        v = [Fraction(x) for x in vec]
        return tuple(sum((row[k] * v[k] for k in range(self.ncols)), Fraction(0)) for row in self.rows)

    def determinant(self) -> Fraction:
        """Exact determinant; denominators are cleared row by row, then the
        integer Bareiss elimination runs."""
        if self.nrows != self.ncols:
            raise MatrixShapeError("determinant requires a square matrix")
        scale = Fraction(1)
        int_rows: list[list[int]] = []
        for row in self.rows:
            lcm = 1
            for x in row:
                lcm = lcm * x.denominator // math.gcd(lcm, x.denominator)
            scale /= lcm
            int_rows.append([int(x * lcm) for x in row])
        return scale * bareiss_determinant_int(int_rows)

    def _echelon(self) -> tuple[list[list[Fraction]], list[int]]:
        """Row echelon form (exact), returning (rows, pivot column indices)."""
        m = [list(row) for row in self.rows]
        pivots: list[int] = []
        r = 0
        for c in range(self.ncols):
            pivot = next((i for i in range(r, self.nrows) if m[i][c] != 0), None)
            if pivot is None:
                continue
            m[r], m[pivot] = m[pivot], m[r]
            inv = 1 / m[r][c]
            m[r] = [x * inv for x in m[r]]
            for i in range(self.nrows):
                if i != r and m[i][c] != 0:
                    factor = m[i][c]
                    m[i] = [a - factor * b for a, b in zip(m[i], m[r])]
            pivots.append(c)
            r += 1
            if r == self.nrows:
                break
        return m, pivots

    def rank(self) -> int:
        return len(self._echelon()[1])

    def kernel(self) -> list[tuple[Fraction, ...]]:
        """Basis of the right null space, from the reduced echelon form.

        Each basis vector is normalized so its first nonzero entry is
        positive (and scaled to be integral and primitive), which keeps the
        output deterministic.
        """
        rref, pivots = self._echelon()
        free_cols = [c for c in range(self.ncols) if c not in pivots]
        basis: list[tuple[Fraction, ...]] = []
        for fc in free_cols:
            vec = [Fraction(0)] * self.ncols
            vec[fc] = Fraction(1)
            for r, pc in enumerate(pivots):
                vec[pc] = -rref[r][fc]
            basis.append(_normalize_vector(vec))
        return basis

    def inverse(self) -> "RationalMatrix":
        if self.nrows != self.ncols:
            raise MatrixShapeError("inverse requires a square matrix")
        n = self.nrows
        aug = RationalMatrix([list(self.rows[i]) + [Fraction(int(i == j)) for j in range(n)] for i in range(n)])
        rref, pivots = aug._echelon()
        if pivots != list(range(n)):
            raise MatrixShapeError("matrix is singular")
        return RationalMatrix([row[n:] for row in rref])

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalMatrix) and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(("RationalMatrix", self.rows))

    def __repr__(self) -> str:
        return f"RationalMatrix({[list(map(str, row)) for row in self.rows]})"


def _normalize_vector(vec: list[Fraction]) -> tuple[Fraction, ...]:
    lcm = 1
    for x in vec:
        lcm = lcm * x.denominator // math.gcd(lcm, x.denominator)
    ints = [int(x * lcm) for x in vec]
    g = 0
    for v in ints:
        g = math.gcd(g, abs(v))
    if g:
        ints = [v // g for v in ints]
    lead = next((v for v in ints if v != 0), 0)
    if lead < 0:
        ints = [-v for v in ints]
    return tuple(Fraction(v) for v in ints)


def kernel_and_det(matrix: RationalMatrix) -> tuple[Fraction | None, list[tuple[Fraction, ...]]]:
    """Exact (determinant, kernel basis); determinant is None for non-square."""
    det = matrix.determinant() if matrix.nrows == matrix.ncols else None
    return det, matrix.kernel()


def rank_of_int_rows(rows: Sequence[Sequence[int]]) -> int:
    return RationalMatrix(rows).rank() if rows else 0
