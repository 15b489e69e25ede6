"""Mahler measures and absolute Weil heights with certified enclosures.

Heights are always computed through the minimal polynomial: the Mahler
measure of the minimal polynomial of a degree-k algebraic number equals its
height to the k-th power, so an outward-rounded product over certified root
enclosures yields a certified height enclosure.  Rational numbers
short-circuit to the exact value max(|p|, |q|).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .intervals import PrecisionExhausted, RealInterval
from .intpoly import IntPolynomial
from .numberfield import FieldElement
from .roots import EmbeddingSet, isolate_roots

DEFAULT_PRECISION = 128
PRECISION_CAP = 4096


@lru_cache(maxsize=4096)
def _isolate_cached(coeffs: tuple[int, ...], precision: int) -> EmbeddingSet:
    return isolate_roots(IntPolynomial(coeffs), precision)


def mahler_measure(f: IntPolynomial, precision: int = DEFAULT_PRECISION) -> RealInterval:
    """Enclosure of |lc(f)| * prod max(1, |root|) over all complex roots.

    A root enclosure straddling the unit circle is refined once; if it still
    straddles, its factor contributes max(1, .) of the straddling interval,
    which is a valid and still-shrinking enclosure.
    """
    if f.is_zero:
        raise ValueError("Mahler measure of the zero polynomial")
    if f.degree == 0:
        return RealInterval.exact(abs(f.coeffs[0]), precision)
    if f.degree == 1:
        return RealInterval.exact(max(abs(f.coeffs[0]), abs(f.coeffs[1])), precision)
    emb = _isolate_cached(f.coeffs, precision)
    moduli = [e.abs_interval() for e in emb.enclosures]
    if any(m.lo < 1 < m.hi for m in moduli):
        emb = _isolate_cached(f.coeffs, precision * 2)
        moduli = [e.abs_interval() for e in emb.enclosures]
    out = RealInterval.exact(abs(f.leading_coefficient), precision)
    for m in moduli:
        out = out.mul(m.max_with_one())
    return out


@dataclass(frozen=True)
class HeightReport:
    """Certified height data for a field element."""

    element: FieldElement
    minpoly: IntPolynomial
    mahler: RealInterval
    height: RealInterval
    precision: int
    exact: Fraction | None = None

    def enclosure(self, precision: int) -> RealInterval:
        if self.exact is not None:
            return RealInterval.exact(self.exact, precision)
        if precision <= self.precision:
            return self.height
        return _height_interval(self.minpoly, precision)

    def refine(self, precision: int) -> "HeightReport":
        if self.exact is not None or precision <= self.precision:
            return self
        return HeightReport(
            element=self.element,
            minpoly=self.minpoly,
            mahler=mahler_measure(self.minpoly, precision),
            height=_height_interval(self.minpoly, precision),
            precision=precision,
            exact=None,
        )


def _height_interval(minpoly: IntPolynomial, precision: int) -> RealInterval:
    return mahler_measure(minpoly, precision).nth_root(minpoly.degree)


def weil_height(element: FieldElement, precision: int = DEFAULT_PRECISION) -> HeightReport:
    """Certified enclosure of the absolute multiplicative Weil height."""
    if element.is_zero:
        raise ValueError("height of zero is undefined")
    minpoly = element.minimal_polynomial()
    if element.is_rational:
        q = element.as_rational()
        value = Fraction(max(abs(q.numerator), abs(q.denominator)))
        point = RealInterval.exact(value, precision)
        return HeightReport(element, minpoly, point, point, precision, exact=value)
    return HeightReport(
        element=element,
        minpoly=minpoly,
        mahler=mahler_measure(minpoly, precision),
        height=_height_interval(minpoly, precision),
        precision=precision,
    )


class HeightValue:
    """Refinable height of a fixed minimal polynomial (for comparisons)."""

    def __init__(self, minpoly: IntPolynomial):
        self.minpoly = minpoly

    def enclosure(self, precision: int) -> RealInterval:
        return _height_interval(self.minpoly, precision)


class SupNormValue:
    """Refinable sup-norm of a field element across all embeddings."""

    def __init__(self, element: FieldElement):
        self.element = element

    def enclosure(self, precision: int) -> RealInterval:
        return self.element.field.sup_norm_interval(self.element, precision)


def height_equivalent_minpolys(p: IntPolynomial, q: IntPolynomial) -> bool:
    """Detect minimal polynomials with provably equal heights.

    Equality holds for the polynomial itself and for its images under
    x -> -x and coefficient reversal (both preserve the Mahler measure and
    the degree).
    """
    if p.degree != q.degree:
        return False
    variants = {
        q,
        q.negate_variable().primitive_part(),
        q.reversed_coefficients().primitive_part(),
        q.reversed_coefficients().negate_variable().primitive_part(),
    }
    return p in variants


def compare_elements_by_height(
    u: FieldElement,
    v: FieldElement,
    start_precision: int = DEFAULT_PRECISION,
    cap: int = PRECISION_CAP,
) -> int:
    """Exact three-way height comparison (-1, 0, +1).

    Ties are decided through minimal-polynomial symmetry; the interval
    escalation therefore terminates for genuinely distinct heights, and a
    residual unresolved overlap raises instead of guessing.
    """
    pu = u.minimal_polynomial()
    pv = v.minimal_polynomial()
    if height_equivalent_minpolys(pu, pv):
        return 0
    prec = start_precision
    while prec <= cap:
        iu = _height_interval(pu, prec)
        iv = _height_interval(pv, prec)
        if iu.hi < iv.lo:
            return -1
        if iv.hi < iu.lo:
            return 1
        prec *= 2
    raise PrecisionExhausted(
        f"height tie between {pu!r} and {pv!r} unresolved at {cap} bits"
    )
