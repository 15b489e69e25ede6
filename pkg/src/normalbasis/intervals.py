"""Outward-rounded interval arithmetic on exact rational endpoints.

Endpoints are Fractions.  After every operation the endpoints are rounded
outward to the dyadic grid of the stated precision, so widths stay bounded
while enclosures remain valid.  A point interval with equal endpoints
represents an exactly known rational value.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Protocol, Union


class PrecisionExhausted(RuntimeError):
    """A certified decision could not be reached below the precision cap."""


def floor_div_to_fraction(x: Fraction, prec: int) -> Fraction:
    """Largest multiple of 2**-prec that is <= x."""
    scaled = x * (1 << prec)
    return Fraction(scaled.numerator // scaled.denominator, 1 << prec)


def ceil_div_to_fraction(x: Fraction, prec: int) -> Fraction:
    scaled = x * (1 << prec)
    return Fraction(-((-scaled.numerator) // scaled.denominator), 1 << prec)


def isqrt_floor(n: int) -> int:
    return math.isqrt(n)


def isqrt_ceil(n: int) -> int:
    r = math.isqrt(n)
    return r if r * r == n else r + 1


def iroot_floor(n: int, k: int) -> int:
    """floor(n ** (1/k)) for n >= 0, k >= 1, by integer Newton iteration."""
    if n < 0:
        raise ValueError("negative radicand")
    if k == 1 or n < 2:
        return n
    if k == 2:
        return math.isqrt(n)
    x = 1 << (-(-n.bit_length() // k))
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    return x


def iroot_ceil(n: int, k: int) -> int:
    r = iroot_floor(n, k)
    return r if r ** k == n else r + 1


def sqrt_lower(x: Fraction, prec: int) -> Fraction:
    """A dyadic lower bound on sqrt(x) at roughly 2**-prec granularity."""
    if x < 0:
        raise ValueError("sqrt of negative value")
    scale = 1 << prec
    n = (x.numerator * scale * scale) // x.denominator
    return Fraction(isqrt_floor(n), scale)


def sqrt_upper(x: Fraction, prec: int) -> Fraction:
    if x < 0:
        raise ValueError("sqrt of negative value")
    scale = 1 << prec
    n = -((-x.numerator * scale * scale) // x.denominator)
    return Fraction(isqrt_ceil(n), scale)


def nth_root_lower(x: Fraction, k: int, prec: int) -> Fraction:
    if x < 0:
        raise ValueError("root of negative value")
    scale = 1 << prec
    n = (x.numerator * scale**k) // x.denominator
    return Fraction(iroot_floor(n, k), scale)


def nth_root_upper(x: Fraction, k: int, prec: int) -> Fraction:
    if x < 0:
        raise ValueError("root of negative value")
    scale = 1 << prec
    n = -((-x.numerator * scale**k) // x.denominator)
    return Fraction(iroot_ceil(n, k), scale)


@dataclass(frozen=True)
class RealInterval:
    """A closed interval [lo, hi] with exact rational endpoints."""

    lo: Fraction
    hi: Fraction
    precision: int = 128

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"inverted interval [{self.lo}, {self.hi}]")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def exact(value, precision: int = 128) -> "RealInterval":
        q = Fraction(value)
        return RealInterval(q, q, precision)

    @staticmethod
    def bounds(lo, hi, precision: int) -> "RealInterval":
        """Round [lo, hi] outward onto the dyadic grid."""
        lo = Fraction(lo)
        hi = Fraction(hi)
        return RealInterval(
            floor_div_to_fraction(lo, precision),
            ceil_div_to_fraction(hi, precision),
            precision,
        )

    # -- basic queries -----------------------------------------------------

    @property
    def is_exact(self) -> bool:
        return self.lo == self.hi

    def width(self) -> Fraction:
        return self.hi - self.lo

    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, value) -> bool:
        q = Fraction(value)
        return self.lo <= q <= self.hi

    def contains_interval(self, other: "RealInterval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def overlaps(self, other: "RealInterval") -> bool:
        return not (self.hi < other.lo or other.hi < self.lo)

    def intersect(self, other: "RealInterval") -> "RealInterval":
        lo = max(self.lo, other.lo)
        hi = min(self.hi, other.hi)
        if lo > hi:
            raise ValueError("empty intersection")
        return RealInterval(lo, hi, max(self.precision, other.precision))

    def straddles_zero(self) -> bool:
        return self.lo < 0 < self.hi

    # -- arithmetic (outward rounded) ---------------------------------------

    def _prec(self, other: "RealInterval") -> int:
        return max(self.precision, other.precision)

    def add(self, other: "RealInterval") -> "RealInterval":
        p = self._prec(other)
        return RealInterval.bounds(self.lo + other.lo, self.hi + other.hi, p)

    def sub(self, other: "RealInterval") -> "RealInterval":
        p = self._prec(other)
        return RealInterval.bounds(self.lo - other.hi, self.hi - other.lo, p)

    def neg(self) -> "RealInterval":
        return RealInterval(-self.hi, -self.lo, self.precision)

    def mul(self, other: "RealInterval") -> "RealInterval":
        p = self._prec(other)
        products = (
            self.lo * other.lo,
            self.lo * other.hi,
            self.hi * other.lo,
            self.hi * other.hi,
        )
        return RealInterval.bounds(min(products), max(products), p)

    def mul_scalar(self, q) -> "RealInterval":
        q = Fraction(q)
        if q >= 0:
            return RealInterval.bounds(self.lo * q, self.hi * q, self.precision)
        return RealInterval.bounds(self.hi * q, self.lo * q, self.precision)

    def add_scalar(self, q) -> "RealInterval":
        q = Fraction(q)
        return RealInterval.bounds(self.lo + q, self.hi + q, self.precision)

    def div(self, other: "RealInterval") -> "RealInterval":
        if other.lo <= 0 <= other.hi:
            raise ZeroDivisionError("division by an interval containing zero")
        p = self._prec(other)
        quotients = (
            self.lo / other.lo,
            self.lo / other.hi,
            self.hi / other.lo,
            self.hi / other.hi,
        )
        return RealInterval.bounds(min(quotients), max(quotients), p)

    def abs(self) -> "RealInterval":
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return self.neg()
        return RealInterval(Fraction(0), max(-self.lo, self.hi), self.precision)

    def squared(self) -> "RealInterval":
        a = self.abs()
        return RealInterval.bounds(a.lo * a.lo, a.hi * a.hi, self.precision)

    def max_with_one(self) -> "RealInterval":
        return RealInterval(max(self.lo, Fraction(1)), max(self.hi, Fraction(1)), self.precision)

    def sqrt(self) -> "RealInterval":
        if self.lo < 0:
            raise ValueError("sqrt of interval with negative lower end")
        return RealInterval(
            sqrt_lower(self.lo, self.precision),
            sqrt_upper(self.hi, self.precision),
            self.precision,
        )

    def nth_root(self, k: int) -> "RealInterval":
        if self.lo < 0:
            raise ValueError("root of interval with negative lower end")
        if k == 1:
            return self
        return RealInterval(
            nth_root_lower(self.lo, k, self.precision),
            nth_root_upper(self.hi, k, self.precision),
            self.precision,
        )

    def pow_int(self, k: int) -> "RealInterval":
        if k == 0:
            return RealInterval.exact(1, self.precision)
        out = self
        for _ in range(k - 1):
            out = out.mul(self)
        return out

    def with_precision(self, precision: int) -> "RealInterval":
        return RealInterval(self.lo, self.hi, precision)

    def __repr__(self) -> str:
        return f"RealInterval[{self.lo}, {self.hi}]@{self.precision}"


@dataclass(frozen=True)
class ComplexRectangle:
    """Axis-aligned rectangular enclosure of a complex value."""

    re: RealInterval
    im: RealInterval

    @staticmethod
    def exact(re, im=0, precision: int = 128) -> "ComplexRectangle":
        return ComplexRectangle(RealInterval.exact(re, precision), RealInterval.exact(im, precision))

    @property
    def is_real(self) -> bool:
        return self.im.lo == 0 == self.im.hi

    def add(self, other: "ComplexRectangle") -> "ComplexRectangle":
        return ComplexRectangle(self.re.add(other.re), self.im.add(other.im))

    def mul(self, other: "ComplexRectangle") -> "ComplexRectangle":
        re = self.re.mul(other.re).sub(self.im.mul(other.im))
        im = self.re.mul(other.im).add(self.im.mul(other.re))
        return ComplexRectangle(re, im)

    def add_scalar(self, q) -> "ComplexRectangle":
        return ComplexRectangle(self.re.add_scalar(q), self.im)

    def modulus(self) -> RealInterval:
        return self.re.squared().add(self.im.squared()).sqrt()

    def __repr__(self) -> str:
        return f"ComplexRectangle(re={self.re}, im={self.im})"


class Comparison(enum.Enum):
    LESS = "LESS"
    GREATER = "GREATER"
    EQUAL = "EQUAL"
    INCONCLUSIVE = "INCONCLUSIVE"


class Refinable(Protocol):
    def enclosure(self, precision: int) -> RealInterval: ...


CompareOperand = Union[int, Fraction, RealInterval, "Refinable"]


@dataclass(frozen=True)
class NthRootValue:
    """The real number radicand ** (num / den), refinable to any precision."""

    radicand: Fraction
    num: int = 1
    den: int = 2

    def __post_init__(self):
        if self.radicand < 0:
            raise ValueError("negative radicand")
        if self.den < 1 or self.num < 0:
            raise ValueError("exponent must be a nonnegative rational")

    def enclosure(self, precision: int) -> RealInterval:
        powed = Fraction(self.radicand) ** self.num
        return RealInterval(
            nth_root_lower(powed, self.den, precision),
            nth_root_upper(powed, self.den, precision),
            precision,
        )


def _as_enclosure_fn(x: CompareOperand):
    if isinstance(x, (int, Fraction)):
        q = Fraction(x)
        return q, lambda prec: RealInterval.exact(q, prec)
    if isinstance(x, RealInterval):
        # A bare interval is not refinable; it stays fixed under escalation.
        return (x.lo if x.is_exact else None), lambda prec: x
    return None, x.enclosure


def certified_compare(
    x: CompareOperand,
    bound: CompareOperand,
    max_precision: int = 4096,
    start_precision: int = 128,
) -> Comparison:
    """Compare two real quantities by escalating interval precision.

    EQUAL is only returned when both operands are exactly known rationals.
    INCONCLUSIVE means the intervals still overlapped at ``max_precision``.
    """
    xq, xf = _as_enclosure_fn(x)
    bq, bf = _as_enclosure_fn(bound)
    if xq is not None and bq is not None:
        if xq < bq:
            return Comparison.LESS
        if xq > bq:
            return Comparison.GREATER
        return Comparison.EQUAL
    prec = start_precision
    while True:
        xi = xf(prec)
        bi = bf(prec)
        if xi.hi < bi.lo:
            return Comparison.LESS
        if xi.lo > bi.hi:
            return Comparison.GREATER
        if prec >= max_precision:
            return Comparison.INCONCLUSIVE
        prec = min(2 * prec, max_precision)


def fraction_to_decimal(q: Fraction, digits: int = 32) -> str:
    """Deterministic decimal rendering (round toward zero at ``digits``)."""
    if q == 0:
        return "0"
    sign = "-" if q < 0 else ""
    q = abs(q)
    int_part = q.numerator // q.denominator
    frac = q - int_part
    scaled = (frac.numerator * 10**digits) // frac.denominator
    frac_str = str(scaled).rjust(digits, "0").rstrip("0")
    if frac_str:
        return f"{sign}{int_part}.{frac_str}"
    return f"{sign}{int_part}"


def dyadic_to_exact_decimal(q: Fraction) -> str:
    """Exact decimal string for a rational with 2-power (or 2^a 5^b) denominator."""
    den = q.denominator
    twos = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    fives = 0
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den != 1:
        raise ValueError(f"{q} has no finite decimal expansion")
    k = max(twos, fives)
    scaled = q.numerator * (5 ** (k - fives)) * (2 ** (k - twos))
    sign = "-" if scaled < 0 else ""
    s = str(abs(scaled)).rjust(k + 1, "0")
    if k == 0:
        return sign + s
    int_part, frac_part = s[:-k], s[-k:]
    frac_part = frac_part.rstrip("0")
    return sign + int_part + ("." + frac_part if frac_part else "")
