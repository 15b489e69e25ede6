import math
import random
from fractions import Fraction

import pytest

from normalbasis.intervals import (
    Comparison,
    ComplexRectangle,
    NthRootValue,
    RealInterval,
    certified_compare,
    dyadic_to_exact_decimal,
    fraction_to_decimal,
    iroot_ceil,
    iroot_floor,
    nth_root_lower,
    nth_root_upper,
)


class TestIntegerRoots:
    def test_iroot_floor_matches_isqrt(self):
        rng = random.Random(1)
        for _ in range(200):
            n = rng.randint(0, 10**12)
            assert iroot_floor(n, 2) == math.isqrt(n)

    def test_iroot_bounds(self):
        rng = random.Random(2)
        for _ in range(200):
            n = rng.randint(0, 10**10)
            k = rng.randint(1, 7)
            r = iroot_floor(n, k)
            assert r**k <= n < (r + 1) ** k
            c = iroot_ceil(n, k)
            assert (c - 1) ** k < n <= c**k or (n == 0 and c == 0)


class TestOutwardRounding:
    def test_arithmetic_contains_exact(self):
        rng = random.Random(3)
        for _ in range(200):
            a = Fraction(rng.randint(-50, 50), rng.randint(1, 9))
            b = Fraction(rng.randint(-50, 50), rng.randint(1, 9))
            ia = RealInterval.exact(a, 64)
            ib = RealInterval.exact(b, 64)
            assert ia.add(ib).contains(a + b)
            assert ia.sub(ib).contains(a - b)
            assert ia.mul(ib).contains(a * b)
            if b != 0:
                assert ia.div(RealInterval.exact(b, 64)).contains(a / b)
            assert ia.squared().contains(a * a)
            assert ia.abs().contains(abs(a))

    def test_sqrt_and_nth_root_enclose(self):
        rng = random.Random(4)
        for _ in range(100):
            q = Fraction(rng.randint(1, 10**6), rng.randint(1, 100))
            k = rng.randint(2, 6)
            lo = nth_root_lower(q, k, 96)
            hi = nth_root_upper(q, k, 96)
            assert lo**k <= q <= hi**k
            assert hi - lo <= Fraction(2, 1 << 96) * max(1, hi)

    def test_width_shrinks_with_precision(self):
        two = RealInterval.exact(2)
        w64 = RealInterval(two.lo, two.hi, 64).sqrt().width()
        w128 = RealInterval(two.lo, two.hi, 128).sqrt().width()
        assert w128 <= w64

    def test_max_with_one(self):
        iv = RealInterval(Fraction(1, 2), Fraction(3, 2), 64)
        clamped = iv.max_with_one()
        assert clamped.lo == 1 and clamped.hi == Fraction(3, 2)


class TestComplexRectangle:
    def test_modulus(self):
        z = ComplexRectangle.exact(3, 4, 96)
        mod = z.modulus()
        assert mod.contains(5)
        assert mod.width() < Fraction(1, 1 << 64)

    def test_mul(self):
        a = ComplexRectangle.exact(1, 2, 96)
        b = ComplexRectangle.exact(3, -1, 96)
        prod = a.mul(b)
        assert prod.re.contains(5) and prod.im.contains(5)


class TestCertifiedCompare:
    def test_interval_vs_rational(self):
        iv = RealInterval(Fraction(130, 100), Fraction(131, 100), 64)
        assert certified_compare(iv, 7) is Comparison.LESS

    def test_exact_equhorizontal(self):
        assert certified_compare(Fraction(2), 2) is Comparison.EQUAL

    def test_sqrt5_vs_rational_just_below(self):
        # sqrt(5) = 2.2360679774997896..., so this rational sits just below it
        below = Fraction(22360679774, 10**10)
        assert certified_compare(NthRootValue(Fraction(5)), below, start_precision=8) is Comparison.GREATER

    def test_sqrt5_vs_rational_just_above(self):
        above = Fraction(22360679775, 10**10)
        assert certified_compare(NthRootValue(Fraction(5)), above, start_precision=8) is Comparison.LESS

    def test_inconclusive_on_equal_irrationals(self):
        assert (
            certified_compare(NthRootValue(Fraction(5)), NthRootValue(Fraction(5)), max_precision=512)
            is Comparison.INCONCLUSIVE
        )


class TestDecimalStrings:
    def test_dyadic_round_trip(self):
        rng = random.Random(5)
        for _ in range(100):
            q = Fraction(rng.randint(-1000, 1000), 2 ** rng.randint(0, 40))
            assert Fraction(dyadic_to_exact_decimal(q)) == q

    def test_non_dyadic_rejected(self):
        with pytest.raises(ValueError):
            dyadic_to_exact_decimal(Fraction(1, 3))

    def test_fraction_to_decimal(self):
        assert fraction_to_decimal(Fraction(1, 4)) == "0.25"
        assert fraction_to_decimal(Fraction(-3)) == "-3"
        assert fraction_to_decimal(Fraction(0)) == "0"
