import math
import random
from fractions import Fraction

import pytest

from normalbasis.intpoly import (
    IntPolynomial,
    PolynomialError,
    count_real_roots,
    discriminant,
    qpoly_divmod,
    qpoly_ext_gcd,
    resultant,
    resultant_and_discriminant,
)


def roots_product_resultant(f, g, digits=60):
    """Second oracle: lc(f)^deg(g) * prod g(alpha_i) over numeric roots of f."""
    import mpmath

    with mpmath.workdps(digits):
        roots = mpmath.polyroots([mpmath.mpf(c) for c in reversed(f.coeffs)], maxsteps=200, extraprec=120)
        value = mpmath.mpf(f.leading_coefficient) ** g.degree
        for r in roots:
            acc = mpmath.mpc(0)
            for c in reversed(g.coeffs):
                acc = acc * r + c
            value *= acc
        return complex(value)


class TestResultantAndDiscriminant:
    def test_quadratic_golden(self):
        # oracle: b^2 - 4ac for x^2 - x - 1
        f = IntPolynomial([-1, -1, 1])
        assert (-1) ** 2 - 4 * 1 * (-1) == 5
        _, disc = resultant_and_discriminant(f)
        assert disc == 5

    def test_quadratic_sqrt5(self):
        f = IntPolynomial([-5, 0, 1])
        assert 0**2 - 4 * 1 * (-5) == 20
        _, disc = resultant_and_discriminant(f)
        assert disc == 20

    def test_cubic_conductor7(self):
        # oracle: closed cubic formula 18abcd - 4b^3d + b^2c^2 - 4ac^3 - 27a^2d^2
        # for x^3 + x^2 - 2x - 1 (a=1, b=1, c=-2, d=-1)
        a, b, c, d = 1, 1, -2, -1
        formula = 18 * a * b * c * d - 4 * b**3 * d + b**2 * c**2 - 4 * a * c**3 - 27 * a**2 * d**2
        assert formula == 49 == 7**2  # conductor 7 squared
        _, disc = resultant_and_discriminant(IntPolynomial([-1, -2, 1, 1]))
        assert disc == 49

    def test_zero_polynomial_rejected(self):
        with pytest.raises(PolynomialError):
            resultant_and_discriminant(IntPolynomial([]))
        with pytest.raises(PolynomialError):
            resultant_and_discriminant(IntPolynomial([3]))

    def test_resultant_numeric_cross_check(self):
        rng = random.Random(41)
        for _ in range(25):
            f = IntPolynomial([rng.randint(-5, 5) for _ in range(rng.randint(2, 5))] + [rng.randint(1, 4)])
            g = IntPolynomial([rng.randint(-5, 5) for _ in range(rng.randint(2, 5))] + [rng.randint(1, 4)])
            exact = resultant(f, g)
            approx = roots_product_resultant(f, g)
            assert abs(approx.imag) < 1e-20 * max(1, abs(exact))
            assert abs(approx.real - exact) < 1e-18 * max(1.0, abs(exact))

    def test_resultant_vanishes_iff_common_factor(self):
        rng = random.Random(42)
        for _ in range(40):
            shared = IntPolynomial([rng.randint(-3, 3), rng.randint(1, 3)])
            f1 = IntPolynomial([rng.randint(-3, 3) for _ in range(2)] + [1])
            g1 = IntPolynomial([rng.randint(-3, 3) for _ in range(2)] + [1])
            f = shared * f1
            g = shared * g1
            assert resultant(f, g) == 0
            # without the shared factor: resultant zero iff gcd nonconstant
            res = resultant(f1, g1)
            gcd_poly, _, _ = qpoly_ext_gcd(
                tuple(Fraction(c) for c in f1.coeffs),
                tuple(Fraction(c) for c in g1.coeffs),
            )
            assert (res == 0) == (len(gcd_poly) > 1)


class TestPolynomialBasics:
    def test_primitive_part_and_content(self):
        f = IntPolynomial([6, -9, 12])
        assert f.content() == 3
        assert f.primitive_part() == IntPolynomial([2, -3, 4])
        g = IntPolynomial([-6, 0, -12])
        assert g.primitive_part().leading_coefficient > 0

    def test_shift_and_symmetries(self):
        f = IntPolynomial([-1, -3, 0, 1])  # x^3 - 3x - 1
        shifted = f.compose_shift(-1)  # f(x - 1): minimal polynomial of theta + 1
        assert shifted == IntPolynomial([1, 0, -3, 1])  # x^3 - 3x^2 + 1
        assert f.compose_shift(0) == f
        rev = f.reversed_coefficients()
        assert rev == IntPolynomial([1, 0, -3, -1])
        neg = f.negate_variable()
        assert neg == IntPolynomial([-1, 3, 0, -1])

    def test_divmod_and_ext_gcd(self):
        f = tuple(Fraction(c) for c in (-1, 0, 1))  # x^2 - 1
        g = tuple(Fraction(c) for c in (-1, 1))  # x - 1
        q, r = qpoly_divmod(f, g)
        assert q == (Fraction(1), Fraction(1)) and r == ()
        gcd, u, v = qpoly_ext_gcd(f, g)
        assert gcd == (Fraction(-1), Fraction(1))  # monic x - 1

    def test_evaluate_exact(self):
        f = IntPolynomial([-1, -2, 1, 1])
        assert f.evaluate(Fraction(1, 2)) == Fraction(1, 8) + Fraction(1, 4) - 1 - 1


class TestSturm:
    @pytest.mark.parametrize(
        "coeffs,count",
        [
            ([-5, 0, 1], 2),
            ([1, 0, 1], 0),
            ([-1, -2, 1, 1], 3),
            ([-2, 0, 0, 1], 1),
            ([1, 1, 1, 1, 1], 0),
            ([1, 3, -3, -4, 1, 1], 5),
        ],
    )
    def test_known_counts(self, coeffs, count):
        assert count_real_roots(IntPolynomial(coeffs)) == count

    def test_counts_match_sympy(self):
        sympy = pytest.importorskip("sympy")
        x = sympy.Symbol("x")
        rng = random.Random(43)
        for _ in range(20):
            coeffs = [rng.randint(-4, 4) for _ in range(rng.randint(2, 5))] + [1]
            f = IntPolynomial(coeffs)
            if discriminant(f) == 0:
                continue
            expr = sum(c * x**k for k, c in enumerate(coeffs))
            expected = sympy.Poly(expr, x).count_roots()
            assert count_real_roots(f) == expected

    def test_interval_counts(self):
        f = IntPolynomial([-5, 0, 1])
        assert count_real_roots(f, Fraction(0), None) == 1
        assert count_real_roots(f, None, Fraction(0)) == 1
        assert count_real_roots(f, Fraction(3), None) == 0
