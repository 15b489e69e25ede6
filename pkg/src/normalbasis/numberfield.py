"""Number fields Q[x]/(f), their elements, and exact automorphism machinery.

Irreducibility of the defining polynomial is never tested up front: it is
detected lazily, either by an inversion whose extended gcd turns up a proper
factor or by a minimal polynomial whose degree fails to divide the field
degree.  Automorphisms are recognized numerically (integer relations between
high-precision root values) but admitted only after an exact verification
that the candidate image is a root of f, so numerics can cause
incompleteness but never a wrong automorphism.
"""

from __future__ import annotations

import math
import threading
from fractions import Fraction
from typing import Iterable, Sequence

from .intpoly import (
    IntPolynomial,
    count_real_roots,
    qpoly_divmod,
    qpoly_ext_gcd,
    qpoly_trim,
    resultant_and_discriminant,
)
from .intervals import RealInterval
from .linalg import RationalMatrix
from .lll import find_integer_relations
from .roots import EmbeddingSet, isolate_roots

AUTOMORPHISM_START_BITS = 64
AUTOMORPHISM_CAP_BITS = 2048


class FieldConstructionError(ValueError):
    pass


class ReducibleDefiningPolynomialError(ArithmeticError):
    """The defining polynomial turned out to be reducible."""

    def __init__(self, message: str, factor: IntPolynomial | None = None):
        super().__init__(message)
        self.factor = factor


class NotGaloisError(ValueError):
    pass


def squarefree_status(n: int, trial_bound: int = 100_000) -> bool | None:
    """True / False when squarefreeness of |n| is decided, None when unknown."""
    n = abs(n)
    if n == 0:
        return False
    if n == 1:
        return True
    m = n
    p = 2
    while p <= trial_bound and p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return False
        p += 1 if p == 2 else 2
    if m == 1:
        return True
    r = math.isqrt(m)
    if r * r == m:
        return False
    if m <= trial_bound * trial_bound:
        return True  # cofactor is prime: no factor below its square root
    return None


class NumberField:
    """K = Q[x]/(f) for a monic integer polynomial f of degree >= 2."""

    def __init__(
        self,
        poly: IntPolynomial,
        basis_matrix: RationalMatrix,
        discriminant: int,
        poly_discriminant: Fraction,
        index: int,
        maximality_warning: bool,
        is_totally_real: bool,
    ):
        self.poly = poly
        self.degree = poly.degree
        self.basis_matrix = basis_matrix
        self.basis_matrix_inv = basis_matrix.inverse()
        self.discriminant = discriminant
        self.poly_discriminant = poly_discriminant
        self.index = index
        self.maximality_warning = maximality_warning
        self.is_totally_real = is_totally_real
        self._reduction_rows = self._build_reduction_rows()
        self._automorphisms: list[Automorphism] | None = None
        self._automorphism_complete: bool | None = None
        self._auto_lock = threading.Lock()
        self._embeddings: EmbeddingSet | None = None
        self._trace_gram: RationalMatrix | None = None

    # -- construction helpers ------------------------------------------------

    def _build_reduction_rows(self) -> list[tuple[Fraction, ...]]:
        d = self.degree
        rows: list[tuple[Fraction, ...]] = []
        current = [Fraction(-c) for c in self.poly.coeffs[:d]]  # x^d mod f
        rows.append(tuple(current))
        for _ in range(d - 2):
            shifted = [Fraction(0)] + current[:-1]
            lead = current[-1]
            current = [s + lead * r for s, r in zip(shifted, rows[0])]
            rows.append(tuple(current))
        return rows

    # -- element constructors --------------------------------------------------

    def element(self, power_coords: Sequence) -> "FieldElement":
        coords = [Fraction(c) for c in power_coords]
        if len(coords) > self.degree:
            raise FieldConstructionError("coordinate vector longer than the degree")
        coords += [Fraction(0)] * (self.degree - len(coords))
        return FieldElement(self, tuple(coords))

    def from_integral_coords(self, basis_coords: Sequence) -> "FieldElement":
        vec = self.basis_matrix.transpose().matvec([Fraction(c) for c in basis_coords])
        return FieldElement(self, tuple(vec))

    def zero(self) -> "FieldElement":
        return self.element([])

    def one(self) -> "FieldElement":
        return self.element([1])

    def rational(self, q) -> "FieldElement":
        return self.element([Fraction(q)])

    def generator(self) -> "FieldElement":
        return self.element([0, 1])

    def integral_basis_elements(self) -> list["FieldElement"]:
        return [FieldElement(self, tuple(row)) for row in self.basis_matrix.rows]

    # -- embeddings ------------------------------------------------------------

    def embeddings(self, precision: int = 128) -> EmbeddingSet:
        """Root enclosures of f, refined monotonically and order-stable."""
        if self._embeddings is None:
            self._embeddings = isolate_roots(self.poly, precision)
        elif self._embeddings.precision < precision:
            self._embeddings = self._embeddings.refined(precision)
        return self._embeddings

    def embed_element(self, element: "FieldElement", precision: int = 128):
        return self.embeddings(precision).embed(element.coords)

    def sup_norm_interval(self, element: "FieldElement", precision: int = 128) -> RealInterval:
        return self.embeddings(precision).sup_norm(element.coords)

    # -- automorphisms -----------------------------------------------------------

    def set_automorphisms(self, images: Iterable["FieldElement"]) -> None:
        """Install externally supplied automorphisms after exact verification."""
        verified: dict[tuple, Automorphism] = {}
        gen = self.generator()
        identity = Automorphism(self, gen)
        verified[gen.coords] = identity
        for img in images:
            if img.field is not self:
                img = self.element(img.coords)
            if not _is_root_of_defining_poly(self, img):
                raise FieldConstructionError(
                    f"supplied automorphism image {list(map(str, img.coords))} is not a root of f"
                )
            verified[img.coords] = Automorphism(self, img)
        with self._auto_lock:
            self._automorphisms = _order_automorphisms(list(verified.values()))
            self._automorphism_complete = True

    def automorphisms(self, precision: int = AUTOMORPHISM_START_BITS) -> list["Automorphism"]:
        with self._auto_lock:
            if self._automorphisms is None:
                autos, complete = find_automorphisms(self, precision)
                self._automorphisms = autos
                self._automorphism_complete = complete
            return self._automorphisms

    @property
    def automorphism_search_complete(self) -> bool | None:
        return self._automorphism_complete

    def is_galois(self) -> bool | None:
        """True / False when decidable; None when recognition was incomplete."""
        autos = self.automorphisms()
        if len(autos) == self.degree:
            return True
        if self._automorphism_complete:
            return False
        return None

    def require_galois(self) -> list["Automorphism"]:
        verdict = self.is_galois()
        if verdict is True:
            return self.automorphisms()
        count = len(self.automorphisms())
        if verdict is False:
            raise NotGaloisError(f"field is not Galois ({count} automorphism{'s' if count != 1 else ''})")
        raise NotGaloisError(f"Galois status indeterminate ({count} verified automorphisms, search incomplete)")

    # -- exact bilinear data -------------------------------------------------------

    def trace_gram(self) -> RationalMatrix:
        """Trace form Tr(b_i b_j) of the integral basis (exact)."""
        if self._trace_gram is None:
            basis = self.integral_basis_elements()
            rows = []
            for bi in basis:
                rows.append([(bi * bj).trace() for bj in basis])
            self._trace_gram = RationalMatrix(rows)
        return self._trace_gram

    def __repr__(self) -> str:
        return f"NumberField({self.poly!r}, degree={self.degree}, disc={self.discriminant})"


class FieldElement:
    """An element of a NumberField in power-basis coordinates."""

    __slots__ = ("field", "coords", "_minpoly")

    def __init__(self, field: NumberField, coords: tuple[Fraction, ...]):
        self.field = field
        self.coords = coords
        self._minpoly: IntPolynomial | None = None

    # -- predicates ------------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    @property
    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coords[1:])

    def as_rational(self) -> Fraction:
        if not self.is_rational:
            raise ValueError("element is not rational")
        return self.coords[0]

    def minimal_polynomial(self) -> IntPolynomial:
        """Primitive integer minimal polynomial with positive leading term.

        Found as the first exact linear dependency among 1, a, a^2, ...; a
        degree that fails to divide the field degree betrays a reducible
        defining polynomial.
        """
        if self._minpoly is not None:
            return self._minpoly
        d = self.field.degree
        powers = [self.field.one()]
        for _ in range(d):
            powers.append(powers[-1] * self)
        rows = [list(p.coords) for p in powers]
        for k in range(1, d + 1):
            kernel = RationalMatrix(rows[: k + 1]).transpose().kernel()
            if kernel:
                relation = kernel[0]
                if relation[k] == 0:
                    continue
                poly = _fractions_to_primitive_int(relation)
                if d % poly.degree != 0:
                    raise ReducibleDefiningPolynomialError(
                        f"minimal polynomial degree {poly.degree} does not divide {d}; "
                        "the defining polynomial is reducible"
                    )
                self._minpoly = poly
                return poly
        raise AssertionError("unreachable: power basis has a dependency by degree d")

    @property
    def algebraic_degree(self) -> int:
        return self.minimal_polynomial().degree

    @property
    def is_primitive(self) -> bool:
        return self.algebraic_degree == self.field.degree

    @property
    def is_integral(self) -> bool:
        return self.minimal_polynomial().is_monic

    def characteristic_polynomial(self) -> tuple[Fraction, ...]:
        """Monic characteristic polynomial = minpoly ** (d / deg), exact."""
        mp = self.minimal_polynomial().monic_rational()
        power = self.field.degree // (len(mp) - 1)
        out: tuple[Fraction, ...] = (Fraction(1),)
        from .intpoly import qpoly_mul

        for _ in range(power):
            out = qpoly_mul(out, mp)
        return out

    def trace(self) -> Fraction:
        cp = self.characteristic_polynomial()
        return -cp[self.field.degree - 1]

    def norm(self) -> Fraction:
        cp = self.characteristic_polynomial()
        sign = -1 if self.field.degree % 2 else 1
        return sign * cp[0]

    def integral_coords(self) -> tuple[Fraction, ...]:
        """Coordinates with respect to the integral basis."""
        return self.field.basis_matrix_inv.transpose().matvec(self.coords)

    # -- arithmetic ---------------------------------------------------------------

    def _coerce(self, other) -> "FieldElement | None":
        if isinstance(other, FieldElement):
            if other.field is not self.field:
                raise ValueError("elements belong to different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.rational(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.field, tuple(a + b for a, b in zip(self.coords, o.coords)))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.field, tuple(a - b for a, b in zip(self.coords, o.coords)))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return FieldElement(self.field, tuple(-c for c in self.coords))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return FieldElement(self.field, tuple(c * q for c in self.coords))
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = self.field.degree
        full = [Fraction(0)] * (2 * d - 1)
        for i, a in enumerate(self.coords):
            if a == 0:
                continue
            for j, b in enumerate(o.coords):
                if b:
                    full[i + j] += a * b
        rows = self.field._reduction_rows
        for k in range(2 * d - 2, d - 1, -1):
            c = full[k]
            if c:
                full[k] = Fraction(0)
                row = rows[k - d]
                for idx in range(d):
                    full[idx] += c * row[idx]
        return FieldElement(self.field, tuple(full[:d]))

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = self.field.one()
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inverse(self) -> "FieldElement":
        """Exact inverse via the extended gcd in Q[x].

        A nonconstant gcd with f cannot happen in a field; when it does the
        defining polynomial is reducible and the offending factor is named.
        """
        if self.is_zero:
            raise ZeroDivisionError("inversion of zero field element")
        fq = tuple(Fraction(c) for c in self.field.poly.coeffs)
        g, u, _ = qpoly_ext_gcd(qpoly_trim(self.coords), fq)
        if len(g) != 1:
            factor = _fractions_to_primitive_int(g)
            raise ReducibleDefiningPolynomialError(
                f"defining polynomial is reducible: factor {factor!r} found during inversion",
                factor=factor,
            )
        inv = list(u)
        # u may exceed degree d-1 only in degenerate cases; reduce defensively.
        if len(inv) > self.field.degree:
            _, inv = qpoly_divmod(inv, fq)
            inv = list(inv)
        inv += [Fraction(0)] * (self.field.degree - len(inv))
        return FieldElement(self.field, tuple(inv))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.is_rational and self.coords[0] == other
        return (
            isinstance(other, FieldElement)
            and other.field is self.field
            and other.coords == self.coords
        )

    def __hash__(self) -> int:
        return hash((id(self.field), self.coords))

    def __repr__(self) -> str:
        return f"FieldElement({[str(c) for c in self.coords]})"


class Automorphism:
    """A field automorphism, stored as the exact image of the generator."""

    __slots__ = ("field", "image")

    def __init__(self, field: NumberField, image: FieldElement):
        self.field = field
        self.image = image

    @property
    def is_identity(self) -> bool:
        return self.image.coords == self.field.generator().coords

    def __call__(self, element: FieldElement) -> FieldElement:
        if element.field is not self.field:
            raise ValueError("element belongs to a different field")
        acc = self.field.zero()
        for c in reversed(element.coords):
            acc = acc * self.image + c
        return acc

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Automorphism)
            and other.field is self.field
            and other.image == self.image
        )

    def __hash__(self) -> int:
        return hash(("Automorphism", id(self.field), self.image.coords))

    def __repr__(self) -> str:
        return f"Automorphism(theta -> {[str(c) for c in self.image.coords]})"


# ---------------------------------------------------------------------------
# Field construction

def make_field(
    poly: IntPolynomial | Sequence[int],
    integral_basis: RationalMatrix | Sequence[Sequence] | None = None,
) -> NumberField:
    """Build Q[x]/(f) with an optional integral basis.

    Without a basis the power basis is used and the field discriminant is
    disc(f); a maximality warning is set whenever the discriminant has not
    been proved squarefree.  A supplied basis must span an order: it is
    checked exactly for unimodular shape, ring closure, and containment of 1
    and the generator.
    """
    if not isinstance(poly, IntPolynomial):
        poly = IntPolynomial(poly)
    if poly.degree < 2:
        raise FieldConstructionError("defining polynomial must have degree >= 2")
    if not poly.is_monic:
        raise FieldConstructionError("defining polynomial must be monic")
    _, poly_disc = resultant_and_discriminant(poly)
    if poly_disc == 0:
        raise ReducibleDefiningPolynomialError(
            "defining polynomial has repeated roots, hence is reducible"
        )
    d = poly.degree

    if integral_basis is None:
        basis = RationalMatrix.identity(d)
        index = 1
        disc_k = poly_disc
    else:
        basis = integral_basis if isinstance(integral_basis, RationalMatrix) else RationalMatrix(integral_basis)
        if basis.dims != (d, d):
            raise FieldConstructionError(f"integral basis must be {d}x{d}")
        det = basis.determinant()
        if det == 0:
            raise FieldConstructionError("integral basis matrix is singular")
        inv_det = 1 / abs(det)
        if inv_det.denominator != 1:
            raise FieldConstructionError(
                f"integral basis determinant {det} is not the reciprocal of an integer index"
            )
        index = int(inv_det)
        disc_k = poly_disc * det * det
        if disc_k.denominator != 1:
            raise FieldConstructionError("field discriminant disc(f)*det(B)^2 is not an integer")

    disc_int = int(disc_k)
    field = NumberField(
        poly=poly,
        basis_matrix=basis,
        discriminant=disc_int,
        poly_discriminant=poly_disc,
        index=index,
        maximality_warning=squarefree_status(disc_int) is not True,
        is_totally_real=count_real_roots(poly) == d,
    )
    if integral_basis is not None:
        _validate_order(field)
    return field


def _validate_order(field: NumberField) -> None:
    basis = field.integral_basis_elements()

    def integral_in_basis(el: FieldElement) -> bool:
        return all(c.denominator == 1 for c in el.integral_coords())

    if not integral_in_basis(field.one()):
        raise FieldConstructionError("integral basis does not contain 1")
    if not integral_in_basis(field.generator()):
        raise FieldConstructionError("integral basis does not contain the generator")
    for i, bi in enumerate(basis):
        for bj in basis[i:]:
            if not integral_in_basis(bi * bj):
                raise FieldConstructionError(
                    "integral basis is not multiplicatively closed (not an order)"
                )


def _fractions_to_primitive_int(coeffs: Sequence[Fraction]) -> IntPolynomial:
    lcm = 1
    for c in coeffs:
        lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
    return IntPolynomial([int(c * lcm) for c in coeffs]).primitive_part()


def _is_root_of_defining_poly(field: NumberField, candidate: FieldElement) -> bool:
    acc = field.zero()
    for c in reversed(field.poly.coeffs):
        acc = acc * candidate + c
    return acc.is_zero


def _order_automorphisms(autos: list[Automorphism]) -> list[Automorphism]:
    identity = [s for s in autos if s.is_identity]
    rest = [s for s in autos if not s.is_identity]
    rest.sort(key=lambda s: s.image.coords)
    return identity + rest


def find_automorphisms(
    field: NumberField,
    precision: int = AUTOMORPHISM_START_BITS,
) -> tuple[list[Automorphism], bool]:
    """Recognize automorphisms from root values, gated by exact verification.

    Returns (automorphisms, complete).  ``complete`` is False only when some
    root compatible with an automorphism image stayed unrecognized at the
    precision cap, so a False Galois verdict is always certain.
    """
    d = field.degree
    images: dict[tuple, FieldElement] = {}
    gen = field.generator()
    images[gen.coords] = gen

    working = max(precision, AUTOMORPHISM_START_BITS)
    unresolved: set[int] | None = None
    while True:
        emb = field.embeddings(working)
        base = emb.enclosures[0]
        targets = (
            range(1, d)
            if unresolved is None
            else sorted(unresolved)
        )
        unresolved = set()
        base_re = base.re.midpoint()
        base_im = base.im.midpoint()
        powers = _complex_midpoint_powers(base_re, base_im, d)
        for j in targets:
            enc = emb.enclosures[j]
            if base.is_real and not enc.is_real:
                continue  # a real field cannot contain a complex root of f
            if _try_recognize_root(field, emb, powers, j, working, images):
                continue
            unresolved.add(j)
        if len(images) == d or not unresolved or working >= AUTOMORPHISM_CAP_BITS:
            break
        working = min(working * 2, AUTOMORPHISM_CAP_BITS)

    complete = len(images) == d or not unresolved
    autos = _order_automorphisms([Automorphism(field, img) for img in images.values()])
    return autos, complete


def _complex_midpoint_powers(re: Fraction, im: Fraction, d: int) -> list[tuple[Fraction, Fraction]]:
    powers = [(Fraction(1), Fraction(0))]
    for _ in range(d - 1):
        a, b = powers[-1]
        powers.append((a * re - b * im, a * im + b * re))
    return powers


def _try_recognize_root(
    field: NumberField,
    emb: EmbeddingSet,
    base_powers: list[tuple[Fraction, Fraction]],
    j: int,
    working: int,
    images: dict[tuple, FieldElement],
) -> bool:
    enc = emb.enclosures[j]
    target = (enc.re.midpoint(), enc.im.midpoint())
    re_col = [p[0] for p in base_powers] + [target[0]]
    im_col = [p[1] for p in base_powers] + [target[1]]
    columns = [re_col]
    if any(v != 0 for v in im_col):
        columns.append(im_col)
    candidates = find_integer_relations(columns, max(working - 16, 32))
    d = field.degree
    for rel in candidates[:8]:
        lead = rel[d]
        if lead == 0:
            continue
        coords = tuple(Fraction(-rel[k], lead) for k in range(d))
        candidate = FieldElement(field, coords)
        if not _is_root_of_defining_poly(field, candidate):
            continue
        if coords not in images:
            images[coords] = candidate
        # Confirm the recognized element really sits in this enclosure.
        value = emb.embed(coords)[0]
        if value.re.overlaps(enc.re) and value.im.overlaps(enc.im):
            return True
    return False


def conjugate_coordinate_matrix(element: FieldElement) -> RationalMatrix:
    """Rows are the power-basis coordinates of every conjugate of ``element``.

    A nonzero determinant is an exact witness that the conjugates form a
    normal basis.
    """
    field = element.field
    autos = field.require_galois()
    return RationalMatrix([list(sigma(element).coords) for sigma in autos])
