"""Field input parsing, method dispatch, and certificate serialization.

Documents are plain dicts with a fixed key insertion order and every exact
value rendered as a string (integers, "p/q" fractions, or exact decimals for
dyadic interval endpoints), so identical inputs always serialize to
byte-identical JSON.  The one intentionally nondeterministic block, timing,
is segregated under its own top-level key.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field as dataclass_field
from fractions import Fraction
from pathlib import Path
from typing import Any, Iterable

from .artin import SearchExhaustedError, artin_search
from .certificates import NormalBasisCertificate
from .heights import weil_height
from .intervals import (
    Comparison,
    RealInterval,
    dyadic_to_exact_decimal,
    fraction_to_decimal,
)
from .intpoly import IntPolynomial
from .linalg import RationalMatrix
from .minkowski import (
    DispatchError,
    lattice_normal_basis,
    quadratic_normal_basis,
    _is_odd_prime,
)
from .numberfield import (
    FieldConstructionError,
    NotGaloisError,
    NumberField,
    make_field,
)

SCHEMA_CERTIFICATE = "normalbasis.certificate/1"
SCHEMA_ANALYSIS = "normalbasis.analysis/1"

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_NOT_GALOIS = 2
EXIT_SEARCH_EXHAUSTED = 3
EXIT_INCONCLUSIVE = 4


class FieldInputError(ValueError):
    pass


@dataclass
class FieldInput:
    label: str
    defining_polynomial: list[int]
    integral_basis: list[list[Fraction]] | None = None
    automorphisms: list[list[Fraction]] | None = None
    notes: str = ""


@dataclass
class PipelineOptions:
    precision_bits: int = 128
    max_box: int = 8
    reference_c2: Fraction | None = None
    include_timing: bool = True


def _parse_rational(value: Any, context: str) -> Fraction:
    if isinstance(value, bool):
        raise FieldInputError(f"{context}: boolean is not a rational")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise FieldInputError(f"{context}: cannot parse rational {value!r}") from exc
    raise FieldInputError(f"{context}: expected integer or 'p/q' string, got {value!r}")


def load_field(source: str | Path | dict) -> FieldInput:
    """Parse and validate a field-input document (path or pre-parsed dict)."""
    if isinstance(source, (str, Path)):
        path = Path(source)
        try:
            raw = json.loads(path.read_text())
        except json.JSONDecodeError as exc:
            raise FieldInputError(
                f"{path}: JSON parse error at line {exc.lineno}, column {exc.colno}: {exc.msg}"
            ) from exc
        label_default = path.stem
    else:
        raw = source
        label_default = "unnamed"
    if not isinstance(raw, dict):
        raise FieldInputError("field input must be a JSON object")

    coeffs = raw.get("defining_polynomial")
    if not isinstance(coeffs, list) or len(coeffs) < 3:
        raise FieldInputError("defining_polynomial must be a list of >= 3 integers (constant first)")
    poly: list[int] = []
    for i, c in enumerate(coeffs):
        if isinstance(c, bool) or not isinstance(c, int):
            raise FieldInputError(f"defining_polynomial[{i}] is not an integer")
        poly.append(c)
    if poly[-1] != 1:
        raise FieldInputError("defining_polynomial must be monic (last coefficient 1)")
    degree = len(poly) - 1

    basis = None
    if raw.get("integral_basis") is not None:
        rows = raw["integral_basis"]
        if not isinstance(rows, list) or len(rows) != degree:
            raise FieldInputError(f"integral_basis must have {degree} rows")
        basis = []
        for i, row in enumerate(rows):
            if not isinstance(row, list) or len(row) != degree:
                raise FieldInputError(f"integral_basis[{i}] must have {degree} entries")
            basis.append([_parse_rational(x, f"integral_basis[{i}]") for x in row])

    autos = None
    if raw.get("automorphisms") is not None:
        rows = raw["automorphisms"]
        if not isinstance(rows, list):
            raise FieldInputError("automorphisms must be a list of coordinate vectors")
        autos = []
        for i, row in enumerate(rows):
            if not isinstance(row, list) or len(row) != degree:
                raise FieldInputError(f"automorphisms[{i}] must have {degree} entries")
            autos.append([_parse_rational(x, f"automorphisms[{i}]") for x in row])

    return FieldInput(
        label=str(raw.get("label", label_default)),
        defining_polynomial=poly,
        integral_basis=basis,
        automorphisms=autos,
        notes=str(raw.get("notes", "")),
    )


def build_field(field_input: FieldInput) -> NumberField:
    """Construct the field; supplied automorphisms are verified exactly."""
    field = make_field(field_input.defining_polynomial, field_input.integral_basis)
    if field_input.automorphisms is not None:
        images = [field.element(coords) for coords in field_input.automorphisms]
        field.set_automorphisms(images)  # raises loudly on a bad image
    return field


# ---------------------------------------------------------------------------
# Serialization helpers

def _fraction_str(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _endpoint_str(q: Fraction) -> str:
    try:
        return dyadic_to_exact_decimal(q)
    except ValueError:
        return _fraction_str(q)


def _interval_block(iv: RealInterval) -> dict:
    return {
        "lower": _endpoint_str(iv.lo),
        "upper": _endpoint_str(iv.hi),
        "decimal": fraction_to_decimal(iv.midpoint(), 24),
        "precision_bits": iv.precision,
    }


def parse_endpoint(s: str) -> Fraction:
    return Fraction(s)


def _coords(element) -> list[str]:
    return [_fraction_str(c) for c in element.coords]


def _field_block(field: NumberField, label: str, notes: str) -> dict:
    galois = field.is_galois()
    autos = field.automorphisms()
    return {
        "label": label,
        "degree": field.degree,
        "defining_polynomial": list(field.poly.coeffs),
        "integral_basis": [[_fraction_str(x) for x in row] for row in field.basis_matrix.rows],
        "discriminant": str(field.discriminant),
        "polynomial_discriminant": _fraction_str(field.poly_discriminant),
        "index": str(field.index),
        "galois": galois if galois is not None else "indeterminate",
        "totally_real": field.is_totally_real,
        "maximality_warning": field.maximality_warning,
        "automorphism_count": len(autos),
        "automorphisms": [_coords(a.image) for a in autos],
        "notes": notes,
    }


def certificate_document(
    cert: NormalBasisCertificate,
    label: str,
    notes: str = "",
    elapsed: float | None = None,
) -> dict:
    height = cert.height
    bound_block: dict[str, Any] = {"name": cert.bound.name}
    if cert.bound.exact is not None:
        bound_block["kind"] = "exact"
        bound_block["value"] = _fraction_str(cert.bound.exact)
        bound_block["decimal"] = fraction_to_decimal(cert.bound.exact, 24)
    else:
        bound_block["kind"] = "nth-root"
        bound_block["value"] = {
            "radicand": _fraction_str(cert.bound.radicand),
            "num": cert.bound.root_num,
            "den": cert.bound.root_den,
        }
        from .intervals import NthRootValue

        bound_block["decimal"] = fraction_to_decimal(
            NthRootValue(cert.bound.radicand, cert.bound.root_num, cert.bound.root_den)
            .enclosure(96)
            .midpoint(),
            24,
        )

    doc = {
        "schema": SCHEMA_CERTIFICATE,
        "status": "ok",
        "field": _field_block(cert.field, label, notes),
        "method": cert.method,
        "beta": _coords(cert.beta),
        "basis": [_coords(b) for b in cert.basis],
        "det_witness": _fraction_str(cert.det_witness),
        "height": {
            "minpoly": list(height.minpoly.coeffs),
            "exact": _fraction_str(height.exact) if height.exact is not None else None,
            "mahler": _interval_block(height.mahler),
            "value": _interval_block(height.height),
        },
        "bound": bound_block,
        "satisfied": cert.satisfied,
        "comparisons": [
            {"name": c.name, "verdict": c.verdict.value, "precision_bits": c.precision}
            for c in cert.comparisons
        ],
        "ratio": _interval_block(cert.ratio) if cert.ratio is not None else None,
        "reference_ratio": _interval_block(cert.reference_ratio)
        if cert.reference_ratio is not None
        else None,
        "search": {
            "candidates_tried": cert.stats.candidates_tried,
            "primitive_candidates": cert.stats.primitive_candidates,
            "shells_scanned": cert.stats.shells_scanned,
            "xi_box_radius": _fraction_str(cert.stats.xi_box_radius)
            if cert.stats.xi_box_radius is not None
            else None,
            "eval_box_radius": _fraction_str(cert.stats.eval_box_radius)
            if cert.stats.eval_box_radius is not None
            else None,
            "xi_vector": list(cert.stats.xi_vector) if cert.stats.xi_vector is not None else None,
            "eval_point": cert.stats.eval_point,
            "fallback_used": cert.stats.fallback_used,
            "enumerated_vectors": cert.stats.enumerated_vectors,
            "notes": list(cert.stats.notes),
        },
    }
    if elapsed is not None:
        doc["timing"] = {"seconds": elapsed}
    return doc


def rejection_document(
    field: NumberField,
    label: str,
    notes: str,
    status: str,
    detail: str,
    elapsed: float | None = None,
) -> dict:
    autos = field.automorphisms()
    doc = {
        "schema": SCHEMA_CERTIFICATE,
        "status": status,
        "field": _field_block(field, label, notes),
        "rejection": {
            "detail": detail,
            "automorphism_count": len(autos),
            "search_complete": bool(field.automorphism_search_complete),
        },
    }
    if elapsed is not None:
        doc["timing"] = {"seconds": elapsed}
    return doc


def analysis_document(field: NumberField, label: str, notes: str = "") -> dict:
    return {
        "schema": SCHEMA_ANALYSIS,
        "field": _field_block(field, label, notes),
    }


# ---------------------------------------------------------------------------
# Pipeline dispatch

def choose_method(field: NumberField) -> str:
    if field.degree == 2:
        return "quadratic"
    if _is_odd_prime(field.degree) and field.is_totally_real:
        return "lattice"
    return "artin"


def run_pipeline(
    field_input: FieldInput,
    method: str = "auto",
    options: PipelineOptions | None = None,
) -> tuple[dict, int]:
    """Run one field through the requested construction.

    Returns (document, exit_code).  Non-Galois fields yield a rejection
    document with exit code 2; an indeterminate Galois status or an
    inconclusive height comparison yields exit code 4; an exhausted search
    yields 3.  Construction errors raise.
    """
    options = options or PipelineOptions()
    start = time.perf_counter()
    field = build_field(field_input)

    galois = field.is_galois()
    elapsed = lambda: time.perf_counter() - start if options.include_timing else None  # noqa: E731
    if galois is False:
        doc = rejection_document(
            field,
            field_input.label,
            field_input.notes,
            status="rejected-not-galois",
            detail=f"not Galois ({len(field.automorphisms())} automorphism"
            f"{'s' if len(field.automorphisms()) != 1 else ''})",
            elapsed=elapsed(),
        )
        return doc, EXIT_NOT_GALOIS
    if galois is None:
        doc = rejection_document(
            field,
            field_input.label,
            field_input.notes,
            status="indeterminate-galois",
            detail="automorphism recognition incomplete at the precision cap",
            elapsed=elapsed(),
        )
        return doc, EXIT_INCONCLUSIVE

    if method == "auto":
        method = choose_method(field)
    try:
        if method == "artin":
            cert = artin_search(field, precision=options.precision_bits)
        elif method == "lattice":
            cert = lattice_normal_basis(field, precision=options.precision_bits)
        elif method == "quadratic":
            cert = quadratic_normal_basis(
                field,
                precision=options.precision_bits,
                reference_constant=options.reference_c2,
            )
        else:
            raise FieldInputError(f"unknown method {method!r}")
    except SearchExhaustedError as exc:
        doc = rejection_document(
            field,
            field_input.label,
            field_input.notes,
            status="search-exhausted",
            detail=str(exc),
            elapsed=elapsed(),
        )
        return doc, EXIT_SEARCH_EXHAUSTED

    doc = certificate_document(cert, field_input.label, field_input.notes, elapsed=elapsed())
    code = EXIT_OK if cert.satisfied is True else EXIT_INCONCLUSIVE
    return doc, code


# ---------------------------------------------------------------------------
# Emission, verification, corpus

def document_to_json_bytes(doc: dict, include_timing: bool = True) -> bytes:
    payload = dict(doc)
    if not include_timing:
        payload.pop("timing", None)
    return (json.dumps(payload, indent=2, allow_nan=False) + "\n").encode()


def render_text(doc: dict) -> str:
    lines = []
    fb = doc.get("field", {})
    lines.append(f"field: {fb.get('label')} (degree {fb.get('degree')}, disc {fb.get('discriminant')})")
    lines.append(f"status: {doc.get('status')}")
    if doc.get("status") == "ok":
        lines.append(f"method: {doc.get('method')}")
        lines.append(f"beta: {doc.get('beta')}")
        for row in doc.get("basis", []):
            lines.append(f"  basis: {row}")
        lines.append(f"det witness: {doc.get('det_witness')}")
        height = doc.get("height", {})
        lines.append(f"height: {height.get('value', {}).get('decimal')}")
        lines.append(f"bound: {doc.get('bound', {}).get('name')} = {doc.get('bound', {}).get('decimal')}")
        lines.append(f"satisfied: {doc.get('satisfied')}")
    elif "rejection" in doc:
        lines.append(f"rejection: {doc['rejection'].get('detail')}")
    return "\n".join(lines) + "\n"


def emit_report(doc: dict, path: str | Path | None, fmt: str = "json") -> bytes:
    if fmt == "json":
        data = document_to_json_bytes(doc)
    elif fmt == "text":
        data = render_text(doc).encode()
    else:
        raise FieldInputError(f"unknown format {fmt!r}")
    if path is not None:
        Path(path).write_bytes(data)
    return data


@dataclass
class VerifyResult:
    ok: bool
    checks: list[str]
    failures: list[str]


def verify_document(source: str | Path | dict) -> VerifyResult:
    """Re-check a serialized certificate from its exact serialized data.

    The determinant witness is recomputed from the basis coordinate rows,
    the basis is recomputed as the conjugates of beta, and the height and
    bound data are recomputed at the stored precision.
    """
    if isinstance(source, (str, Path)):
        doc = json.loads(Path(source).read_text())
    else:
        doc = source
    checks: list[str] = []
    failures: list[str] = []
    if doc.get("status") != "ok":
        return VerifyResult(False, checks, [f"document status is {doc.get('status')!r}"])

    fb = doc["field"]
    field = make_field(
        [int(c) for c in fb["defining_polynomial"]],
        [[Fraction(x) for x in row] for row in fb["integral_basis"]],
    )
    if fb.get("automorphisms"):
        field.set_automorphisms([field.element([Fraction(c) for c in row]) for row in fb["automorphisms"]])

    basis_rows = [[Fraction(x) for x in row] for row in doc["basis"]]
    det = RationalMatrix(basis_rows).determinant()
    if det == Fraction(doc["det_witness"]):
        checks.append("det-witness")
    else:
        failures.append(f"det mismatch: recomputed {det}, stored {doc['det_witness']}")

    beta = field.element([Fraction(c) for c in doc["beta"]])
    conjugates = [sigma(beta) for sigma in field.automorphisms()]
    if [list(c.coords) for c in conjugates] == basis_rows:
        checks.append("basis-is-conjugates-of-beta")
    else:
        failures.append("basis rows are not the conjugates of beta in automorphism order")

    stored = doc["height"]
    if beta.minimal_polynomial().coeffs == tuple(stored["minpoly"]):
        checks.append("minpoly")
    else:
        failures.append("minimal polynomial mismatch")
    precision = int(stored["value"]["precision_bits"])
    recomputed = weil_height(beta, precision)
    lo = parse_endpoint(stored["value"]["lower"])
    hi = parse_endpoint(stored["value"]["upper"])
    if recomputed.height.overlaps(RealInterval(lo, hi, precision)):
        checks.append("height-enclosure")
    else:
        failures.append("height enclosures do not overlap")

    bound = doc["bound"]
    if bound["kind"] == "exact":
        from .artin import artin_height_bound

        expected = artin_height_bound(field.degree, abs(field.discriminant))
        if Fraction(bound["value"]) == expected:
            checks.append("bound-value")
        else:
            failures.append("exact bound value mismatch")
    else:
        if Fraction(bound["value"]["radicand"]) == abs(field.discriminant):
            checks.append("bound-value")
        else:
            failures.append("bound radicand mismatch")

    return VerifyResult(not failures, checks, failures)


def bundled_corpus_paths() -> list[Path]:
    root = Path(__file__).parent / "corpus"
    return sorted(root.glob("*.json"))


def run_corpus(
    paths: Iterable[str | Path] | None = None,
    method: str = "auto",
    options: PipelineOptions | None = None,
) -> list[tuple[str, dict, int]]:
    results = []
    for path in paths or bundled_corpus_paths():
        fi = load_field(path)
        doc, code = run_pipeline(fi, method=method, options=options)
        results.append((fi.label, doc, code))
    return results


def corpus_summary(results: list[tuple[str, dict, int]]) -> str:
    lines = [f"{'label':<22} {'deg':>3} {'disc':>8} {'method':<10} {'status':<22} {'height':<14} code"]
    for label, doc, code in results:
        fb = doc.get("field", {})
        height = doc.get("height", {}).get("value", {}).get("decimal", "-") if doc.get("status") == "ok" else "-"
        status = doc.get("status", "?")
        if doc.get("status") == "ok":
            status += f"/{doc.get('satisfied')}"
        method = doc.get("method", "-")
        lines.append(
            f"{label:<22} {fb.get('degree', '?'):>3} {fb.get('discriminant', '?'):>8} "
            f"{method:<10} {status:<22} {str(height)[:13]:<14} {code}"
        )
    return "\n".join(lines) + "\n"
