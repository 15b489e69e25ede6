"""Exact polynomial arithmetic over Z and Q.

Coefficient lists are stored constant term first, so ``coeffs[k]`` is the
coefficient of ``x**k``.  All arithmetic is exact; nothing in this module
touches floating point.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable, Sequence


class PolynomialError(ValueError):
    """Raised for structurally invalid polynomial inputs."""


def _trim(coeffs: list) -> tuple:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


class IntPolynomial:
    """A polynomial with arbitrary-precision integer coefficients.

    The zero polynomial has ``degree == -1``.  Instances are immutable and
    hashable.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[int]):
        cleaned = []
        for c in coeffs:
            if isinstance(c, Fraction):
                if c.denominator != 1:
                    raise PolynomialError(f"non-integer coefficient {c}")
                c = c.numerator
            elif not isinstance(c, int):
                raise PolynomialError(f"non-integer coefficient {c!r}")
            cleaned.append(int(c))
        object.__setattr__(self, "coeffs", _trim(cleaned))

    def __setattr__(self, *args):
        raise AttributeError("IntPolynomial is immutable")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading_coefficient(self) -> int:
        if self.is_zero:
            return 0
        return self.coeffs[-1]

    @property
    def constant_term(self) -> int:
        return self.coeffs[0] if self.coeffs else 0

    @property
    def is_monic(self) -> bool:
        return self.leading_coefficient == 1

    def content(self) -> int:
        g = 0
        for c in self.coeffs:
            g = math.gcd(g, abs(c))
        return g

    def primitive_part(self) -> "IntPolynomial":
        """Divide out the content and force a positive leading coefficient."""
        if self.is_zero:
            return self
        g = self.content()
        if self.leading_coefficient < 0:
            g = -g
        return IntPolynomial([c // g for c in self.coeffs])

    def max_norm(self) -> int:
        """Largest absolute value among the coefficients."""
        return max((abs(c) for c in self.coeffs), default=0)

    def derivative(self) -> "IntPolynomial":
        return IntPolynomial([k * c for k, c in enumerate(self.coeffs)][1:])

    def evaluate(self, x):
        """Horner evaluation; exact for int/Fraction arguments."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def monic_rational(self) -> tuple[Fraction, ...]:
        """Coefficients of ``self / leading_coefficient`` as Fractions."""
        if self.is_zero:
            raise PolynomialError("zero polynomial has no monic form")
        lc = self.leading_coefficient
        return tuple(Fraction(c, lc) for c in self.coeffs)

    def compose_shift(self, k: int) -> "IntPolynomial":
        """Return ``f(x + k)`` (integer shift of the variable)."""
        out: list[int] = []
        for c in reversed(self.coeffs):
            # out := out * (x + k) + c
            new = [0] * (len(out) + 1)
            for i, v in enumerate(out):
                new[i + 1] += v
                new[i] += v * k
            new[0] += c
            out = new
        return IntPolynomial(out)

    def reversed_coefficients(self) -> "IntPolynomial":
        """Return ``x**deg * f(1/x)``."""
        return IntPolynomial(list(reversed(self.coeffs)))

    def negate_variable(self) -> "IntPolynomial":
        """Return ``f(-x)``."""
        return IntPolynomial([c if k % 2 == 0 else -c for k, c in enumerate(self.coeffs)])

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return IntPolynomial([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        return self + (-other)

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial([-c for c in self.coeffs])

    def __mul__(self, other) -> "IntPolynomial":
        if isinstance(other, int):
            return IntPolynomial([c * other for c in self.coeffs])
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        if self.is_zero or other.is_zero:
            return IntPolynomial([])
        out = [0] * (self.degree + other.degree + 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, IntPolynomial) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(("IntPolynomial", self.coeffs))

    def __repr__(self) -> str:
        if self.is_zero:
            return "IntPolynomial(0)"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            if k == 0:
                terms.append(f"{c:+d}")
            elif k == 1:
                terms.append(f"{c:+d}*x")
            else:
                terms.append(f"{c:+d}*x^{k}")
        return "IntPolynomial(" + " ".join(terms) + ")"


# ---------------------------------------------------------------------------
# Rational-coefficient helpers (plain tuples of Fractions, constant first)

def qpoly_trim(coeffs: Sequence[Fraction]) -> tuple[Fraction, ...]:
    out = list(coeffs)
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def qpoly_degree(p: Sequence[Fraction]) -> int:
    return len(qpoly_trim(p)) - 1


def qpoly_mul(a: Sequence[Fraction], b: Sequence[Fraction]) -> tuple[Fraction, ...]:
    a = qpoly_trim(a)
    b = qpoly_trim(b)
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return tuple(out)


def qpoly_divmod(num: Sequence[Fraction], den: Sequence[Fraction]):
    num = list(qpoly_trim(num))
    den = qpoly_trim(den)
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(num) - len(den) + 1, 0)
    inv_lc = 1 / den[-1]
    while len(num) >= len(den) and num:
        c = num[-1] * inv_lc
        shift = len(num) - len(den)
        q[shift] = c
        for i, d in enumerate(den):
            num[shift + i] -= c * d
        while num and num[-1] == 0:
            num.pop()
    return qpoly_trim(q), qpoly_trim(num)


def qpoly_ext_gcd(a: Sequence[Fraction], b: Sequence[Fraction]):
    """Extended Euclid in Q[x]: returns (g, u, v) with u*a + v*b = g, g monic."""
    r0, r1 = qpoly_trim(a), qpoly_trim(b)
    s0, s1 = (Fraction(1),), ()
    t0, t1 = (), (Fraction(1),)
    while r1:
        q, r = qpoly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, qpoly_trim([x - y for x, y in _zip_pad(s0, qpoly_mul(q, s1))])
        t0, t1 = t1, qpoly_trim([x - y for x, y in _zip_pad(t0, qpoly_mul(q, t1))])
    if not r0:
        return (), s0, t0
    lc = r0[-1]
    return (
        tuple(c / lc for c in r0),
        tuple(c / lc for c in s0),
        tuple(c / lc for c in t0),
    )


def _zip_pad(a: Sequence[Fraction], b: Sequence[Fraction]):
    n = max(len(a), len(b))
    for i in range(n):
        yield (a[i] if i < len(a) else Fraction(0)), (b[i] if i < len(b) else Fraction(0))


# ---------------------------------------------------------------------------
# Resultants, discriminants, Sturm sequences

def sylvester_matrix(f: IntPolynomial, g: IntPolynomial) -> list[list[int]]:
    m, n = f.degree, g.degree
    if m < 0 or n < 0:
        raise PolynomialError("resultant of zero polynomial")
    size = m + n
    rows: list[list[int]] = []
    fr = list(reversed(f.coeffs))
    gr = list(reversed(g.coeffs))
    for i in range(n):
        rows.append([0] * i + fr + [0] * (size - i - len(fr)))
    for i in range(m):
        rows.append([0] * i + gr + [0] * (size - i - len(gr)))
    return rows


def resultant(f: IntPolynomial, g: IntPolynomial) -> int:
    """Res(f, g), exact, via the Sylvester determinant (fraction-free)."""
    from .linalg import bareiss_determinant_int

    if f.is_zero or g.is_zero:
        raise PolynomialError("resultant of zero polynomial")
    if f.degree == 0:
        return f.coeffs[0] ** g.degree
    if g.degree == 0:
        return g.coeffs[0] ** f.degree
    return bareiss_determinant_int(sylvester_matrix(f, g))


def resultant_and_discriminant(f: IntPolynomial) -> tuple[int, Fraction]:
    """Return (Res(f, f'), disc(f)) with disc = (-1)^(d(d-1)/2) Res / lc."""
    if f.is_zero:
        raise PolynomialError("discriminant of the zero polynomial")
    d = f.degree
    if d < 1:
        raise PolynomialError("discriminant requires degree >= 1")
    if d == 1:
        return 1, Fraction(1)
    res = resultant(f, f.derivative())
    sign = -1 if (d * (d - 1) // 2) % 2 else 1
    return res, Fraction(sign * res, f.leading_coefficient)


def discriminant(f: IntPolynomial) -> Fraction:
    return resultant_and_discriminant(f)[1]


def sturm_sequence(f: IntPolynomial) -> list[tuple[Fraction, ...]]:
    """Sturm chain of a squarefree polynomial, over Q."""
    p0 = tuple(Fraction(c) for c in f.coeffs)
    p1 = tuple(Fraction(c) for c in f.derivative().coeffs)
    chain = [qpoly_trim(p0), qpoly_trim(p1)]
    while chain[-1]:
        _, r = qpoly_divmod(chain[-2], chain[-1])
        chain.append(tuple(-c for c in r))
    return chain[:-1]


def _sign_variations(values: list[Fraction]) -> int:
    signs = [v for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if (a > 0) != (b > 0))


def count_real_roots(
    f: IntPolynomial,
    lower: Fraction | None = None,
    upper: Fraction | None = None,
) -> int:
    """Number of distinct real roots of a squarefree f in (lower, upper].

    ``None`` endpoints mean -infinity / +infinity.
    """
    if f.degree < 1:
        return 0
    chain = sturm_sequence(f)

    def value_at(x):
        out = []
        for p in chain:
            acc = Fraction(0)
            for c in reversed(p):
                acc = acc * x + c
            out.append(acc)
        return out

    def value_at_inf(sign: int):
        out = []
        for p in chain:
            if not p:
                out.append(Fraction(0))
            else:
                lead = p[-1]
                deg = len(p) - 1
                out.append(lead if (sign > 0 or deg % 2 == 0) else -lead)
        return out

    lo_vals = value_at_inf(-1) if lower is None else value_at(Fraction(lower))
    hi_vals = value_at_inf(+1) if upper is None else value_at(Fraction(upper))
    return _sign_variations(lo_vals) - _sign_variations(hi_vals)
