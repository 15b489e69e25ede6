import random
from fractions import Fraction

import pytest

from normalbasis.linalg import (
    MatrixShapeError,
    RationalMatrix,
    bareiss_determinant_int,
    kernel_and_det,
)


def cofactor_determinant(rows):
    """Independent oracle: Laplace expansion along the first row."""
    n = len(rows)
    if n == 0:
        return Fraction(1)
    if n == 1:
        return Fraction(rows[0][0])
    total = Fraction(0)
    for j in range(n):
        minor = [r[:j] + r[j + 1 :] for r in rows[1:]]
        sign = -1 if j % 2 else 1
        total += sign * Fraction(rows[0][j]) * cofactor_determinant(minor)
    return total


class TestKernelAndDet:
    def test_identity(self):
        det, kernel = kernel_and_det(RationalMatrix.identity(3))
        assert det == 1
        assert kernel == []

    def test_rank_one(self):
        det, kernel = kernel_and_det(RationalMatrix([[1, 1], [2, 2]]))
        assert det == 0
        assert kernel == [(Fraction(1), Fraction(-1))]

    def test_conjugate_coordinate_matrix(self):
        rows = [[0, 1, 0], [-2, 0, 1], [1, -1, -1]]
        m = RationalMatrix(rows)
        assert cofactor_determinant(rows) == -1
        assert m.determinant() == -1

    def test_non_square_det_is_none(self):
        det, kernel = kernel_and_det(RationalMatrix([[1, 2, 3], [4, 5, 6]]))
        assert det is None
        assert len(kernel) == 1

    def test_determinant_requires_square(self):
        with pytest.raises(MatrixShapeError):
            RationalMatrix([[1, 2, 3], [4, 5, 6]]).determinant()


class TestRandomized:
    def test_det_matches_cofactor_oracle(self):
        rng = random.Random(7)
        for n in range(1, 6):
            for _ in range(10):
                rows = [[Fraction(rng.randint(-6, 6), rng.randint(1, 3)) for _ in range(n)] for _ in range(n)]
                m = RationalMatrix(rows)
                assert m.determinant() == cofactor_determinant(rows)

    def test_rank_nullity(self):
        rng = random.Random(8)
        for _ in range(30):
            nrows = rng.randint(1, 8)
            ncols = rng.randint(1, 8)
            rows = [[rng.randint(-3, 3) for _ in range(ncols)] for _ in range(nrows)]
            m = RationalMatrix(rows)
            kernel = m.kernel()
            assert len(kernel) + m.rank() == ncols
            for vec in kernel:
                assert all(v == 0 for v in m.matvec(vec))

    def test_det_matches_sympy(self):
        sympy = pytest.importorskip("sympy")
        rng = random.Random(9)
        for _ in range(10):
            n = rng.randint(1, 5)
            rows = [[rng.randint(-5, 5) for _ in range(n)] for _ in range(n)]
            assert RationalMatrix(rows).determinant() == sympy.Matrix(rows).det()

    def test_inverse(self):
        rng = random.Random(10)
        count = 0
        while count < 10:
            n = rng.randint(1, 5)
            rows = [[rng.randint(-4, 4) for _ in range(n)] for _ in range(n)]
            m = RationalMatrix(rows)
            if m.determinant() == 0:
                continue
            count += 1
            assert m.matmul(m.inverse()) == RationalMatrix.identity(n)

    def test_bareiss_int(self):
        rng = random.Random(11)
        for _ in range(20):
            n = rng.randint(1, 6)
            rows = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(n)]
            assert bareiss_determinant_int(rows) == cofactor_determinant(rows)
