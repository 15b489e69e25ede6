"""Normal bases from the geometry of numbers, for totally real fields.

The ring of integers embeds as a full lattice in R^d whose Gram matrix is
the exact rational trace form, so LLL reduction and sup-norm successive
minima can be computed with exact preimages: floating point only ever
measures sizes, every filter (trace, primitivity, independence) runs on
exact field elements.  Prime-degree independence comes from Dubickas'
dichotomy: a primitive algebraic integer of odd prime degree with nonzero
trace has linearly independent conjugates.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field as dataclass_field
from fractions import Fraction

from .boxsearch import canonical_sign, iterate_box_points, lex_key
from .certificates import (
    BoundSpec,
    ComparisonRecord,
    NormalBasisCertificate,
    SearchStats,
)
from .heights import (
    DEFAULT_PRECISION,
    HeightReport,
    SupNormValue,
    compare_elements_by_height,
    weil_height,
)
from .intervals import (
    Comparison,
    NthRootValue,
    PrecisionExhausted,
    RealInterval,
    certified_compare,
    sqrt_upper,
)
from .linalg import RationalMatrix
from .lll import DEFAULT_DELTA, lll_reduce_gram
from .numberfield import FieldElement, NumberField, conjugate_coordinate_matrix

ENUMERATION_DEGREE_CAP = 8


class NotTotallyRealError(ValueError):
    pass


class LatticeConsistencyError(RuntimeError):
    """The embedding determinant disagreed with the field discriminant."""


class DispatchError(ValueError):
    """The requested method does not apply to this field's degree."""


def _is_odd_prime(n: int) -> bool:
    if n < 3 or n % 2 == 0:
        return False
    return all(n % p for p in range(3, math.isqrt(n) + 1, 2))


@dataclass
class MinkowskiLattice:
    """The image of the ring of integers under all real embeddings."""

    field: NumberField
    basis_elements: list[FieldElement]
    embedding_matrix: list[list[RealInterval]]
    precision: int

    def trace_gram(self) -> RationalMatrix:
        return self.field.trace_gram()

    def interval_determinant(self) -> RealInterval:
        return interval_determinant(self.embedding_matrix)


def interval_determinant(rows: list[list[RealInterval]]) -> RealInterval:
    n = len(rows)
    precision = rows[0][0].precision if n else 128
    cache: dict[tuple[int, tuple[int, ...]], RealInterval] = {}

    def expand(r: int, cols: tuple[int, ...]) -> RealInterval:
        if r == n:
            return RealInterval.exact(1, precision)
        key = (r, cols)
        if key in cache:
            return cache[key]
        acc = RealInterval.exact(0, precision)
        for idx, c in enumerate(cols):
            sub = expand(r + 1, cols[:idx] + cols[idx + 1 :])
            term = rows[r][c].mul(sub)
            acc = acc.add(term) if idx % 2 == 0 else acc.sub(term)
        cache[key] = acc
        return acc

    return expand(0, tuple(range(n)))


def minkowski_lattice(field: NumberField, precision: int = DEFAULT_PRECISION) -> MinkowskiLattice:
    """Build the embedding lattice of the integral basis, with two gates.

    The exact gate checks det(trace form) == field discriminant, crossing
    the trace/characteristic-polynomial route against the resultant route.
    The interval gate checks that the enclosure of |det| of the embedding
    matrix contains sqrt(|disc|).
    """
    if not field.is_totally_real:
        raise NotTotallyRealError("the embedding lattice requires a totally real field")
    gram_det = field.trace_gram().determinant()
    if gram_det != field.discriminant:
        raise LatticeConsistencyError(
            f"trace form determinant {gram_det} != field discriminant {field.discriminant}; "
            "the supplied integral basis or discriminant is wrong"
        )
    basis = field.integral_basis_elements()
    prec = precision
    while True:
        emb = field.embeddings(prec)
        matrix = [
            [value.re for value in emb.embed(list(b.coords))]
            for b in basis
        ]
        # rows currently indexed by basis element; transpose to embeddings.
        matrix = [[matrix[j][i] for j in range(len(basis))] for i in range(field.degree)]
        det_abs = interval_determinant(matrix).abs()
        sqrt_disc = NthRootValue(Fraction(abs(field.discriminant))).enclosure(det_abs.precision + 16)
        if det_abs.lo <= sqrt_disc.lo and sqrt_disc.hi <= det_abs.hi:
            return MinkowskiLattice(field, basis, matrix, prec)
        if prec >= 16 * precision:
            raise LatticeConsistencyError(
                "embedding determinant enclosure failed to capture sqrt(|disc|)"
            )
        prec *= 2


@dataclass
class ReducedBasis:
    elements: list[FieldElement]
    transform: list[list[int]]
    gram: list[list[Fraction]]


def lll_reduce(lattice: MinkowskiLattice, delta: Fraction = DEFAULT_DELTA) -> ReducedBasis:
    """LLL on the exact trace Gram; the unimodular transform is applied to
    the exact preimage elements."""
    gram = [list(row) for row in lattice.trace_gram().rows]
    u, reduced_gram = lll_reduce_gram(gram, delta)
    elements = []
    for row in u:
        el = lattice.field.zero()
        for coeff, b in zip(row, lattice.basis_elements):
            if coeff:
                el = el + coeff * b
        elements.append(el)
    return ReducedBasis(elements, u, reduced_gram)


# ---------------------------------------------------------------------------
# Exact sup-norm order

def compare_sup_norms(
    u: FieldElement,
    v: FieldElement,
    start_precision: int = 64,
    cap: int = 1 << 14,
) -> int:
    """Exact three-way comparison of embedding sup-norms (totally real).

    The squared sup-norm of u is the largest root of the minimal polynomial
    of u^2, so equal minimal polynomials of the squares decide ties exactly
    and distinct ones guarantee the interval escalation terminates.
    """
    if (u * u).minimal_polynomial() == (v * v).minimal_polynomial():
        return 0
    field = u.field
    prec = start_precision
    while prec <= cap:
        su = field.sup_norm_interval(u, prec)
        sv = field.sup_norm_interval(v, prec)
        if su.hi < sv.lo:
            return -1
        if sv.hi < su.lo:
            return 1
        prec *= 2
    raise PrecisionExhausted("sup-norm comparison did not separate")


def _candidate_sort_key_cmp(field: NumberField):
    def cmp(a: FieldElement, b: FieldElement) -> int:
        by_norm = compare_sup_norms(a, b)
        if by_norm:
            return by_norm
        ka = lex_key(_int_coords(a))
        kb = lex_key(_int_coords(b))
        return -1 if ka < kb else (1 if ka > kb else 0)

    return functools.cmp_to_key(cmp)


def _int_coords(element: FieldElement) -> tuple[int, ...]:
    return tuple(int(c) for c in element.integral_coords())


# ---------------------------------------------------------------------------
# Exact lattice point enumeration (Fincke-Pohst on the rational Gram)

def _ldl_decomposition(gram: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(gram)
    a = [[Fraction(x) for x in row] for row in gram]
    for i in range(n):
        if a[i][i] <= 0:
            raise LatticeConsistencyError("Gram matrix is not positive definite")
        for j in range(i + 1, n):
            a[j][i] = a[i][j]
            a[i][j] = a[i][j] / a[i][i]
        for k in range(i + 1, n):
            for l in range(k, n):
                a[k][l] -= a[k][i] * a[i][l]
    return a


def enumerate_quadratic_form(
    gram: list[list[Fraction]],
    bound: Fraction,
) -> list[tuple[int, ...]]:
    """All nonzero integer vectors x with x^T G x <= bound, exactly.

    Classical layered enumeration on the exact LDL decomposition; the layer
    bounds use a rational upper bound on the square root and every candidate
    is re-checked with exact arithmetic, so the output is provably complete.
    """
    n = len(gram)
    q = _ldl_decomposition(gram)
    results: list[tuple[int, ...]] = []
    x = [0] * n

    def descend(i: int, remaining: Fraction) -> None:
        if i < 0:
            vec = tuple(x)
            if any(vec):
                results.append(vec)
            return
        center = sum((q[i][j] * x[j] for j in range(i + 1, n)), Fraction(0))
        t = remaining / q[i][i]
        s_up = sqrt_upper(t, 32)
        lo = math.ceil(-center - s_up)
        hi = math.floor(-center + s_up)
        for k in range(lo, hi + 1):
            used = q[i][i] * (k + center) ** 2
            if used <= remaining:
                x[i] = k
                descend(i - 1, remaining - used)
        x[i] = 0

    descend(n - 1, Fraction(bound))
    results.sort()
    return results


@dataclass
class MinimaResult:
    """Successive sup-norm minima with exact attaining preimages."""

    vectors: list[FieldElement]
    minima: list[RealInterval]
    non_optimal: bool = False
    enumerated: int = 0


def supnorm_minima(
    lattice: MinkowskiLattice,
    precision: int = DEFAULT_PRECISION,
    degree_cap: int = ENUMERATION_DEGREE_CAP,
) -> MinimaResult:
    """Exact successive minima of the sup-norm cube on the lattice.

    All lattice vectors inside a certified search radius from the LLL basis
    are enumerated exactly, sorted by the exact sup-norm order (ties broken
    by preimage coordinates), and collected greedily under exact linear
    independence.  Past the degree cap the LLL basis itself is returned with
    a non-optimality flag.
    """
    field = lattice.field
    d = field.degree
    reduced = lll_reduce(lattice)
    if d > degree_cap:
        vectors = sorted(
            (_canonical_element(e) for e in reduced.elements),
            key=_candidate_sort_key_cmp(field),
        )
        minima = [field.sup_norm_interval(v, precision) for v in vectors]
        return MinimaResult(vectors, minima, non_optimal=True)

    b0 = max(field.sup_norm_interval(e, precision).hi for e in reduced.elements)
    bound = Fraction(d) * b0 * b0
    coeff_vectors = enumerate_quadratic_form(reduced.gram, bound)
    seen: dict[tuple[int, ...], FieldElement] = {}
    for coeffs in coeff_vectors:
        el = field.zero()
        for c, b in zip(coeffs, reduced.elements):
            if c:
                el = el + c * b
        canon = canonical_sign(_int_coords(el))
        if canon not in seen:
            seen[canon] = field.from_integral_coords(canon)
    candidates = sorted(seen.values(), key=_candidate_sort_key_cmp(field))

    chosen: list[FieldElement] = []
    rows: list[list[Fraction]] = []
    for el in candidates:
        if RationalMatrix(rows + [list(el.coords)]).rank() == len(chosen) + 1:
            chosen.append(el)
            rows.append(list(el.coords))
            if len(chosen) == d:
                break
    if len(chosen) < d:
        raise LatticeConsistencyError("enumeration bound missed independent vectors")
    minima = [field.sup_norm_interval(v, precision) for v in chosen]
    return MinimaResult(chosen, minima, enumerated=len(candidates))


def _canonical_element(el: FieldElement) -> FieldElement:
    canon = canonical_sign(_int_coords(el))
    return el.field.from_integral_coords(canon)


# ---------------------------------------------------------------------------
# Dubickas' dichotomy

@dataclass(frozen=True)
class DubickasVerdict:
    independent: bool
    determinant: Fraction | None = None
    kernel_witness: tuple[Fraction, ...] | None = None


def dubickas_independence(element: FieldElement) -> DubickasVerdict:
    """Decide conjugate independence for odd prime degree, with exact witness.

    A primitive element with nonzero trace is independent (nonzero conjugate
    determinant); trace zero forces the dependence sum of all conjugates = 0,
    witnessed by the all-ones vector; rational elements are dependent.
    """
    field = element.field
    if not _is_odd_prime(field.degree):
        raise DispatchError("Dubickas' dichotomy requires odd prime degree")
    field.require_galois()
    if element.is_rational:
        return DubickasVerdict(independent=False)
    trace = element.trace()
    matrix = conjugate_coordinate_matrix(element)
    det = matrix.determinant()
    if trace == 0:
        ones = tuple(Fraction(1) for _ in range(field.degree))
        row_sum = [sum(matrix.rows[i][j] for i in range(field.degree)) for j in range(field.degree)]
        if det != 0 or any(v != 0 for v in row_sum):
            raise AssertionError("trace-zero element with independent conjugates")
        return DubickasVerdict(independent=False, determinant=det, kernel_witness=ones)
    if det == 0:
        raise AssertionError("Dubickas dichotomy violated: nonzero trace but dependent conjugates")
    return DubickasVerdict(independent=True, determinant=det)


# ---------------------------------------------------------------------------
# The two certificate paths

def lattice_normal_basis(field: NumberField, precision: int = DEFAULT_PRECISION) -> NormalBasisCertificate:
    """Normal basis of integral conjugates with height at most sqrt(|disc|).

    Selection runs over the successive-minima preimages with the joint
    filter (primitive and nonzero trace).  When every minima vector fails
    the filter, the first primitive trace-zero one is shifted by +1 (which
    makes the trace equal to the degree) and certified per instance.
    """
    d = field.degree
    if not _is_odd_prime(d):
        raise DispatchError(
            "lattice method requires odd prime degree; use the quadratic path for d=2 "
            "or the artin path otherwise"
        )
    autos = field.require_galois()
    lattice = minkowski_lattice(field, precision)
    minima = supnorm_minima(lattice, precision)
    stats = SearchStats(enumerated_vectors=minima.enumerated)

    beta: FieldElement | None = None
    for vec in minima.vectors:
        stats.candidates_tried += 1
        if vec.is_primitive and vec.trace() != 0:
            beta = vec
            break
    if beta is None:
        for vec in minima.vectors:
            if vec.is_primitive:
                beta = vec + 1
                stats.fallback_used = True
                stats.notes.append("all minima vectors failed the joint filter; used +1 shift")
                break
    if beta is None:
        beta = _extended_lattice_search(field, lattice, minima, stats)

    verdict = dubickas_independence(beta)
    if not verdict.independent:
        raise AssertionError("selected element failed the independence dichotomy")
    matrix = conjugate_coordinate_matrix(beta)
    det = matrix.determinant()
    if det == 0:
        raise AssertionError("exact re-verification of independence failed")

    report = weil_height(beta, precision)
    abs_disc = Fraction(abs(field.discriminant))
    bound = NthRootValue(abs_disc)
    height_verdict = certified_compare(report, bound, start_precision=precision)
    supnorm_verdict = certified_compare(SupNormValue(beta), bound, start_precision=precision)
    satisfied: bool | str
    if height_verdict in (Comparison.LESS, Comparison.EQUAL):
        satisfied = True
    elif height_verdict is Comparison.GREATER:
        satisfied = False
    else:
        satisfied = "inconclusive"
    sqrt_iv = bound.enclosure(precision)
    ratio = report.height.div(sqrt_iv)
    return NormalBasisCertificate(
        method="lattice",
        field=field,
        beta=beta,
        basis=[sigma(beta) for sigma in autos],
        det_witness=det,
        height=report,
        bound=BoundSpec(name="sqrt-abs-discriminant", radicand=abs_disc),
        satisfied=satisfied,
        comparisons=[
            ComparisonRecord("height-vs-bound", height_verdict, precision),
            ComparisonRecord("supnorm-shortcut", supnorm_verdict, precision),
        ],
        stats=stats,
        ratio=ratio,
    )


def _extended_lattice_search(
    field: NumberField,
    lattice: MinkowskiLattice,
    minima: MinimaResult,
    stats: SearchStats,
) -> FieldElement:
    """Last-resort sweep in increasing sup-norm, +1-shifting trace-zero hits.

    Unreachable when the minima contain any primitive vector (every prime
    degree d >= 3 forces that, since d independent vectors cannot all be
    rational), but kept for robustness.
    """
    reduced = lll_reduce(lattice)
    b0 = max(field.sup_norm_interval(e, 64).hi for e in reduced.elements)
    growth = Fraction(1)
    for _ in range(8):
        growth *= 2
        bound = Fraction(field.degree) * (b0 * growth) ** 2
        seen: dict[tuple[int, ...], FieldElement] = {}
        for coeffs in enumerate_quadratic_form(reduced.gram, bound):
            el = field.zero()
            for c, b in zip(coeffs, reduced.elements):
                if c:
                    el = el + c * b
            canon = canonical_sign(_int_coords(el))
            seen.setdefault(canon, field.from_integral_coords(canon))
        for el in sorted(seen.values(), key=_candidate_sort_key_cmp(field)):
            stats.candidates_tried += 1
            if not el.is_primitive:
                continue
            if el.trace() != 0:
                stats.fallback_used = True
                return el
            shifted = el + 1
            if shifted.is_primitive and shifted.trace() != 0:
                stats.fallback_used = True
                stats.notes.append("extended search used a +1 shift")
                return shifted
    raise LatticeConsistencyError("extended lattice search failed to find a candidate")


def quadratic_normal_basis(
    field: NumberField,
    precision: int = DEFAULT_PRECISION,
    reference_constant: Fraction | None = None,
) -> NormalBasisCertificate:
    """Normal basis for a quadratic field by nondecreasing-height enumeration.

    Elements with zero trace (pure surd part) are skipped exactly; the first
    primitive element of minimal certified height wins.  The certificate
    reports the ratio of the height to |disc|^(1/4) and checks the
    unconditional bound sqrt(|disc|).
    """
    if field.degree != 2:
        raise DispatchError("quadratic path requires degree 2")
    autos = field.require_galois()
    stats = SearchStats()

    lam_lb, q_trace = _quadratic_form_floor(field)
    best: FieldElement | None = None
    best_hi: Fraction | None = None
    shell = 0
    while True:
        shell += 1
        stats.shells_scanned = shell
        if best is not None and best_hi is not None:
            # Every deeper candidate has h >= (lam_lb N^2 / 2)^(1/4).
            if lam_lb * shell * shell / 2 > best_hi**4:
                break
        if shell > 1 << 12:
            raise LatticeConsistencyError("quadratic enumeration ran away")
        for point in iterate_box_points(2, shell, skip_origin=True):
            if max(abs(c) for c in point) != shell:
                continue
            if canonical_sign(point) != point:
                continue
            candidate = field.from_integral_coords(point)
            stats.candidates_tried += 1
            if not candidate.is_primitive:
                continue
            if candidate.trace() == 0:
                continue
            if best is None or compare_elements_by_height(candidate, best) < 0:
                best = candidate
                best_hi = weil_height(candidate, precision).height.hi

    beta = best
    matrix = conjugate_coordinate_matrix(beta)
    det = matrix.determinant()
    if det == 0:
        raise AssertionError("quadratic candidate with dependent conjugates slipped through")
    report = weil_height(beta, precision)
    abs_disc = Fraction(abs(field.discriminant))
    bound = NthRootValue(abs_disc)
    height_verdict = certified_compare(report, bound, start_precision=precision)
    satisfied: bool | str
    if height_verdict in (Comparison.LESS, Comparison.EQUAL):
        satisfied = True
    elif height_verdict is Comparison.GREATER:
        satisfied = False
    else:
        satisfied = "inconclusive"
    quartic_root = NthRootValue(abs_disc, 1, 4)
    ratio = report.height.div(quartic_root.enclosure(precision))
    comparisons = [ComparisonRecord("height-vs-bound", height_verdict, precision)]
    reference_ratio = None
    if reference_constant is not None:
        reference = quartic_root.enclosure(precision).mul_scalar(reference_constant)
        ref_verdict = certified_compare(report, _FixedInterval(reference), start_precision=precision)
        comparisons.append(ComparisonRecord("height-vs-reference-constant", ref_verdict, precision))
        reference_ratio = report.height.div(reference)
    return NormalBasisCertificate(
        method="quadratic",
        field=field,
        beta=beta,
        basis=[sigma(beta) for sigma in autos],
        det_witness=det,
        height=report,
        bound=BoundSpec(name="sqrt-abs-discriminant", radicand=abs_disc),
        satisfied=satisfied,
        comparisons=comparisons,
        stats=stats,
        ratio=ratio,
        reference_ratio=reference_ratio,
    )


class _FixedInterval:
    def __init__(self, interval: RealInterval):
        self.interval = interval

    def enclosure(self, precision: int) -> RealInterval:
        return self.interval


def _quadratic_form_floor(field: NumberField) -> tuple[Fraction, RationalMatrix]:
    """Exact positive-definite coordinate form bounding embedding sizes below.

    For totally real fields this is the trace form; for imaginary quadratics
    it is Tr(b_i * sigma(b_j)) with sigma the conjugation automorphism.  The
    least eigenvalue is bounded below by det/trace for the 2x2 case.
    """
    basis = field.integral_basis_elements()
    if field.is_totally_real:
        q = field.trace_gram()
    else:
        sigma = next(s for s in field.automorphisms() if not s.is_identity)
        q = RationalMatrix([[(bi * sigma(bj)).trace() for bj in basis] for bi in basis])
    det = q.determinant()
    trace = sum(q.rows[i][i] for i in range(2))
    if det <= 0 or trace <= 0:
        raise LatticeConsistencyError("coordinate size form is not positive definite")
    return det / trace, q
