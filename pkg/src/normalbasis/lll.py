"""Exact LLL reduction driven entirely by the Gram matrix.

The reduction never sees coordinates, only exact rational inner products, so
it applies equally to integer lattices and to lattices given by a rational
Gram matrix (for example the trace form of a ring of integers).  The
unimodular transform is returned so exact preimages can be carried along.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

DEFAULT_DELTA = Fraction(99, 100)


class LatticeError(ValueError):
    pass


def _check_gram(gram: Sequence[Sequence]) -> list[list[Fraction]]:
    g = [[Fraction(x) for x in row] for row in gram]
    n = len(g)
    if any(len(row) != n for row in g):
        raise LatticeError("gram matrix must be square")
    for i in range(n):
        for j in range(i):
            if g[i][j] != g[j][i]:
                raise LatticeError("gram matrix must be symmetric")
    return g


def lll_reduce_gram(
    gram: Sequence[Sequence],
    delta: Fraction = DEFAULT_DELTA,
) -> tuple[list[list[int]], list[list[Fraction]]]:
    """LLL-reduce a positive-definite rational Gram matrix.

    Returns ``(U, G')`` where ``U`` is unimodular with ``G' = U G U^T`` and
    ``G'`` satisfies the size-reduction and Lovasz conditions for ``delta``.
    The incremental Gram-Schmidt bookkeeping follows the classical
    description; a full recomputation at the end re-verifies both conditions
    exactly and raises if they fail.
    """
    delta = Fraction(delta)
    if not Fraction(1, 4) < delta < 1:
        raise LatticeError("delta must lie in (1/4, 1)")
    g = _check_gram(gram)
    n = len(g)
    if n == 0:
        return [], []
    u = [[int(i == j) for j in range(n)] for i in range(n)]
    mu = [[Fraction(0)] * n for _ in range(n)]
    b = [Fraction(0)] * n
    b[0] = g[0][0]
    if b[0] <= 0:
        raise LatticeError("gram matrix is not positive definite")

    def gso_row(k: int) -> None:
        for j in range(k):
            s = g[k][j]
            for i in range(j):
                s -= mu[j][i] * mu[k][i] * b[i]
            mu[k][j] = s / b[j]
        s = g[k][k]
        for j in range(k):
            s -= mu[k][j] * mu[k][j] * b[j]
        b[k] = s
        if b[k] <= 0:
            raise LatticeError("gram matrix is not positive definite")

    def row_op(k: int, l: int, q: int) -> None:
        # b_k := b_k - q b_l, applied to U and to the Gram matrix.
        if q == 0:
            return
        u[k] = [a - q * c for a, c in zip(u[k], u[l])]
        gkk = g[k][k] - 2 * q * g[k][l] + q * q * g[l][l]
        for j in range(n):
            g[k][j] -= q * g[l][j]
        for i in range(n):
            g[i][k] -= q * g[i][l]
        g[k][k] = gkk

    def size_reduce(k: int, l: int) -> None:
        if abs(mu[k][l]) > Fraction(1, 2):
            q = _round_half_even(mu[k][l])
            row_op(k, l, q)
            for i in range(l):
                mu[k][i] -= q * mu[l][i]
            mu[k][l] -= q

    def swap_rows(k: int, kmax: int) -> None:
        u[k], u[k - 1] = u[k - 1], u[k]
        g[k], g[k - 1] = g[k - 1], g[k]
        for row in g:
            row[k], row[k - 1] = row[k - 1], row[k]
        m = mu[k][k - 1]
        big = b[k] + m * m * b[k - 1]
        mu[k][k - 1] = m * b[k - 1] / big
        b[k] = b[k - 1] * b[k] / big
        b[k - 1] = big
        for j in range(k - 1):
            mu[k][j], mu[k - 1][j] = mu[k - 1][j], mu[k][j]
        for i in range(k + 1, kmax + 1):
            t = mu[i][k]
            mu[i][k] = mu[i][k - 1] - m * t
            mu[i][k - 1] = t + mu[k][k - 1] * mu[i][k]

    k = 1
    kmax = 0
    while k < n:
        if k > kmax:
            kmax = k
            gso_row(k)
        size_reduce(k, k - 1)
        if b[k] < (delta - mu[k][k - 1] * mu[k][k - 1]) * b[k - 1]:
            swap_rows(k, kmax)
            k = max(k - 1, 1)
        else:
            for l in range(k - 2, -1, -1):
                size_reduce(k, l)
            k += 1

    _verify_reduced(g, delta)
    return u, g


def _round_half_even(q: Fraction) -> int:
    fl = q.numerator // q.denominator
    rem = q - fl
    if rem > Fraction(1, 2):
        return fl + 1
    if rem < Fraction(1, 2):
        return fl
    return fl + (fl % 2)


def gram_schmidt_from_gram(g: Sequence[Sequence[Fraction]]):
    """Full exact GSO of a Gram matrix: returns (mu, squared-norms)."""
    n = len(g)
    mu = [[Fraction(0)] * n for _ in range(n)]
    b = [Fraction(0)] * n
    for k in range(n):
        for j in range(k):
            s = Fraction(g[k][j])
            for i in range(j):
                s -= mu[j][i] * mu[k][i] * b[i]
            mu[k][j] = s / b[j]
        s = Fraction(g[k][k])
        for j in range(k):
            s -= mu[k][j] * mu[k][j] * b[j]
        b[k] = s
    return mu, b


def _verify_reduced(g: Sequence[Sequence[Fraction]], delta: Fraction) -> None:
    mu, b = gram_schmidt_from_gram(g)
    n = len(g)
    for k in range(n):
        if b[k] <= 0:
            raise LatticeError("reduction lost positive definiteness")
        for j in range(k):
            if abs(mu[k][j]) > Fraction(1, 2):
                raise LatticeError("size reduction violated after LLL")
        if k >= 1 and b[k] < (delta - mu[k][k - 1] ** 2) * b[k - 1]:
            raise LatticeError("Lovasz condition violated after LLL")


def gram_of_rows(rows: Sequence[Sequence]) -> list[list[Fraction]]:
    vecs = [[Fraction(x) for x in row] for row in rows]
    return [[sum((a * c for a, c in zip(v, w)), Fraction(0)) for w in vecs] for v in vecs]


def apply_transform(u: Sequence[Sequence[int]], rows: Sequence[Sequence]) -> list[list[Fraction]]:
    out = []
    for urow in u:
        vec = [Fraction(0)] * len(rows[0])
        for coeff, row in zip(urow, rows):
            if coeff:
                for j, x in enumerate(row):
                    vec[j] += coeff * Fraction(x)
        out.append(vec)
    return out


def lll_reduce_basis(
    rows: Sequence[Sequence],
    delta: Fraction = DEFAULT_DELTA,
) -> tuple[list[list[Fraction]], list[list[int]]]:
    """Reduce explicit basis rows; returns (reduced rows, unimodular U)."""
    u, _ = lll_reduce_gram(gram_of_rows(rows), delta)
    return apply_transform(u, rows), u


def transform_determinant(u: Sequence[Sequence[int]]) -> int:
    from .linalg import bareiss_determinant_int

    return bareiss_determinant_int([list(row) for row in u])


def find_integer_relations(
    columns: Sequence[Sequence[Fraction]],
    scale_bits: int,
    delta: Fraction = Fraction(3, 4),
) -> list[tuple[int, ...]]:
    """Candidate integer relations for a list of real quantities.

    ``columns`` holds one or more aligned tuples of rational approximations
    (two tuples for the real and imaginary parts of complex quantities).  A
    relation c with sum_i c_i * value_i ~ 0 shows up as a reduced lattice row
    whose scaled residual columns are small.  Candidates are returned sorted
    by the squared length of the reduced row; callers must verify each
    candidate exactly.
    """
    m = len(columns[0])
    if any(len(col) != m for col in columns):
        raise LatticeError("relation columns must have equal length")
    scale = 1 << scale_bits
    rows: list[list[int]] = []
    for i in range(m):
        row = [int(i == j) for j in range(m)]
        for col in columns:
            approx = Fraction(col[i]) * scale
            row.append(approx.numerator // approx.denominator)
        rows.append(row)
    reduced, _ = lll_reduce_basis(rows, delta)
    scored = []
    for vec in reduced:
        coeffs = tuple(int(x) for x in vec[:m])
        if all(c == 0 for c in coeffs):
            continue
        norm = sum(x * x for x in vec)
        scored.append((norm, coeffs))
    scored.sort(key=lambda t: (t[0], t[1]))
    return [c for _, c in scored]
