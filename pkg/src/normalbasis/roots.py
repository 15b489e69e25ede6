"""Certified isolation of the complex roots of a squarefree integer polynomial.

Numeric approximations come from mpmath; every guarantee is then re-derived
exactly: around each approximate root c we place a disk of radius
deg(f) * |f(c)/f'(c)| (computed in exact rational arithmetic), which always
contains at least one root.  Pairwise disjointness of the disks, an exact
Sturm count of the real roots, and exact separation tests for the ordering
turn the approximations into a certified, deterministically ordered set of
enclosures.  Numerics can only delay success, never corrupt it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import mpmath

from .intervals import ComplexRectangle, RealInterval, sqrt_upper
from .intpoly import IntPolynomial, count_real_roots, resultant_and_discriminant

ISOLATION_HARD_CAP_BITS = 1 << 16


class RepeatedRootsError(ValueError):
    pass


class RootIsolationError(RuntimeError):
    pass


def _mpf_to_fraction(x) -> Fraction:
    sign, man, exp, _ = x._mpf_
    man = int(man)  # gmpy2-backed mpmath hands out mpz, which poisons Fraction
    exp = int(exp)
    if man == 0:
        if exp != 0:
            raise RootIsolationError("non-finite root approximation")
        return Fraction(0)
    value = Fraction(man) * Fraction(2) ** exp
    return -value if sign else value


def _eval_complex_exact(coeffs: Sequence[int], a: Fraction, b: Fraction) -> tuple[Fraction, Fraction]:
    re, im = Fraction(0), Fraction(0)
    for c in reversed(coeffs):
        re, im = re * a - im * b + c, re * b + im * a
    return re, im


@dataclass(frozen=True)
class RootEnclosure:
    """A rectangle certified to contain exactly one root of the polynomial."""

    re: RealInterval
    im: RealInterval
    is_real: bool

    def rectangle(self) -> ComplexRectangle:
        return ComplexRectangle(self.re, self.im)

    def abs_interval(self) -> RealInterval:
        if self.is_real:
            return self.re.abs()
        return self.rectangle().modulus()

    def intersect(self, other: "RootEnclosure") -> "RootEnclosure":
        return RootEnclosure(
            self.re.intersect(other.re),
            self.im.intersect(other.im),
            self.is_real or other.is_real,
        )

    def overlaps(self, other: "RootEnclosure") -> bool:
        return self.re.overlaps(other.re) and self.im.overlaps(other.im)


class EmbeddingSet:
    """Disjoint enclosures of all roots of f, in a reproducible order.

    Real roots come first in ascending order, then complex-conjugate pairs
    ordered by real part (imaginary part as tie-break for pairs whose real
    parts do not separate), the positive-imaginary member first.
    """

    def __init__(self, poly: IntPolynomial, precision: int, enclosures: list[RootEnclosure]):
        self.poly = poly
        self.precision = precision
        self.enclosures = enclosures

    @property
    def degree(self) -> int:
        return self.poly.degree

    @property
    def n_real(self) -> int:
        return sum(1 for e in self.enclosures if e.is_real)

    @property
    def is_totally_real(self) -> bool:
        return self.n_real == self.degree

    def refined(self, precision: int) -> "EmbeddingSet":
        """Re-isolate at higher precision; enclosures shrink, order is kept."""
        if precision <= self.precision:
            return self
        fresh = isolate_roots(self.poly, precision)
        matched: list[RootEnclosure] = []
        for old in self.enclosures:
            hits = [e for e in fresh.enclosures if e.overlaps(old)]
            if len(hits) == 1:
                matched.append(hits[0].intersect(old))
            else:  # ambiguous overlap: keep the fresh enclosure of this slot
                matched.append(_match_by_order(old, fresh.enclosures, matched))
        return EmbeddingSet(self.poly, precision, matched)

    def embed(self, coords: Sequence[Fraction]) -> list[ComplexRectangle]:
        """Images of sum(coords[k] * theta**k) under every embedding."""
        out = []
        for enc in self.enclosures:
            if enc.is_real:
                acc = RealInterval.exact(0, self.precision)
                for c in reversed(coords):
                    acc = acc.mul(enc.re).add_scalar(c)
                out.append(ComplexRectangle(acc, RealInterval.exact(0, self.precision)))
            else:
                acc_c = ComplexRectangle.exact(0, 0, self.precision)
                rect = enc.rectangle()
                for c in reversed(coords):
                    acc_c = acc_c.mul(rect).add_scalar(c)
                out.append(acc_c)
        return out

    def abs_values(self, coords: Sequence[Fraction]) -> list[RealInterval]:
        return [v.re.abs() if v.is_real else v.modulus() for v in self.embed(coords)]

    def sup_norm(self, coords: Sequence[Fraction]) -> RealInterval:
        values = self.abs_values(coords)
        return RealInterval(
            max(v.lo for v in values),
            max(v.hi for v in values),
            self.precision,
        )


def _match_by_order(old: RootEnclosure, fresh: list[RootEnclosure], taken: list[RootEnclosure]) -> RootEnclosure:
    for e in fresh:
        if e.overlaps(old) and all(e is not t for t in taken):
            return e
    raise RootIsolationError("refinement failed to match an enclosure")


def isolate_roots(f: IntPolynomial, precision: int) -> EmbeddingSet:
    """Certified enclosures of every complex root of a squarefree f.

    Each enclosure has width at most 2**-precision in both coordinates and
    the realness flag is provably correct.
    """
    d = f.degree
    if d < 1:
        raise ValueError("root isolation requires degree >= 1")
    if d == 1:
        root = Fraction(-f.coeffs[0], f.coeffs[1])
        enc = RootEnclosure(RealInterval.exact(root, precision), RealInterval.exact(0, precision), True)
        return EmbeddingSet(f, precision, [enc])
    _, disc = resultant_and_discriminant(f)
    if disc == 0:
        raise RepeatedRootsError("polynomial has repeated roots")
    n_real = count_real_roots(f)

    coeff_bits = max(abs(c).bit_length() for c in f.coeffs if c != 0)
    working = max(precision + 32, coeff_bits + 32, 64)
    maxsteps = 100
    while working <= ISOLATION_HARD_CAP_BITS:
        result = _attempt_isolation(f, d, n_real, precision, working, maxsteps)
        if result is not None:
            return EmbeddingSet(f, precision, result)
        working *= 2
        maxsteps += 100
    raise RootIsolationError(f"isolation did not converge below {ISOLATION_HARD_CAP_BITS} bits")


def _attempt_isolation(
    f: IntPolynomial,
    d: int,
    n_real: int,
    precision: int,
    working: int,
    maxsteps: int,
) -> list[RootEnclosure] | None:
    coeffs_desc = list(reversed(f.coeffs))
    with mpmath.workprec(working + 16):
        try:
            approx = mpmath.polyroots(
                [mpmath.mpf(c) for c in coeffs_desc],
                maxsteps=maxsteps,
                extraprec=working // 2 + 32,
            )
        except mpmath.libmp.NoConvergence:
            return None
        centers = [(_mpf_to_fraction(z.real), _mpf_to_fraction(z.imag)) for z in approx]

    fprime = f.derivative()
    tol = Fraction(1, 1 << (precision + 2))
    disks: list[tuple[Fraction, Fraction, Fraction]] = []
    for a, b in centers:
        fre, fim = _eval_complex_exact(f.coeffs, a, b)
        dre, dim = _eval_complex_exact(fprime.coeffs, a, b)
        dnorm = dre * dre + dim * dim
        if dnorm == 0:
            return None
        rsq = Fraction(d * d) * (fre * fre + fim * fim) / dnorm
        radius = sqrt_upper(rsq, precision + 8)
        if radius > tol:
            return None
        disks.append((a, b, radius))

    # Disjointness makes "contains at least one root" into "exactly one".
    for i in range(len(disks)):
        ai, bi, ri = disks[i]
        for j in range(i + 1, len(disks)):
            aj, bj, rj = disks[j]
            if (ai - aj) ** 2 + (bi - bj) ** 2 <= (ri + rj) ** 2:
                return None

    axis = [k for k, (_, b, r) in enumerate(disks) if abs(b) <= r]
    if len(axis) != n_real:
        return None
    # Real roots must also be separated on the real line to fix their order.
    for x in range(len(axis)):
        ax, _, rx = disks[axis[x]]
        for y in range(x + 1, len(axis)):
            ay, _, ry = disks[axis[y]]
            if abs(ax - ay) <= rx + ry:
                return None

    pos = [k for k, (_, b, r) in enumerate(disks) if k not in axis and b > 0]
    neg = [k for k, (_, b, r) in enumerate(disks) if k not in axis and b < 0]
    if len(pos) != len(neg):
        return None
    pairs: list[tuple[int, int]] = []
    used: set[int] = set()
    for p in pos:
        ap, bp, rp = disks[p]
        hits = [
            q
            for q in neg
            if q not in used and (ap - disks[q][0]) ** 2 + (-bp - disks[q][1]) ** 2 <= (rp + disks[q][2]) ** 2
        ]
        if len(hits) != 1:
            return None
        pairs.append((p, hits[0]))
        used.add(hits[0])

    # Pair ordering must be decidable: real parts separate, or if not, the
    # imaginary parts of the positive members must.
    def pair_sortable(p1, p2) -> int | None:
        a1, b1, r1 = disks[p1[0]]
        a2, b2, r2 = disks[p2[0]]
        if a1 + r1 < a2 - r2:
            return -1
        if a2 + r2 < a1 - r1:
            return 1
        if b1 + r1 < b2 - r2:
            return -1
        if b2 + r2 < b1 - r1:
            return 1
        return None

    for x in range(len(pairs)):
        for y in range(x + 1, len(pairs)):
            if pair_sortable(pairs[x], pairs[y]) is None:
                return None

    import functools

    pairs.sort(key=functools.cmp_to_key(lambda u, v: pair_sortable(u, v)))
    axis.sort(key=lambda k: disks[k][0])

    enclosures: list[RootEnclosure] = []
    for k in axis:
        a, _, r = disks[k]
        enclosures.append(
            RootEnclosure(
                RealInterval.bounds(a - r, a + r, precision + 4),
                RealInterval.exact(0, precision),
                True,
            )
        )
    for p, q in pairs:
        for k in (p, q):
            a, b, r = disks[k]
            enclosures.append(
                RootEnclosure(
                    RealInterval.bounds(a - r, a + r, precision + 4),
                    RealInterval.bounds(b - r, b + r, precision + 4),
                    False,
                )
            )
    return enclosures
