"""Command line interface.

Subcommands: analyze, normal-basis, verify, corpus.  Exit codes: 0 success,
2 not Galois, 3 search exhausted, 4 inconclusive precision, 1 other errors.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from . import report
from .artin import SearchExhaustedError
from .intpoly import PolynomialError
from .minkowski import DispatchError, LatticeConsistencyError, NotTotallyRealError
from .numberfield import (
    FieldConstructionError,
    NotGaloisError,
    ReducibleDefiningPolynomialError,
)
from .report import (
    EXIT_ERROR,
    EXIT_INCONCLUSIVE,
    EXIT_NOT_GALOIS,
    EXIT_OK,
    EXIT_SEARCH_EXHAUSTED,
    FieldInputError,
    PipelineOptions,
)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="normalbasis",
        description="Construct and certify normal bases of small height in Galois number fields.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--precision-bits", type=int, default=128)
        p.add_argument("--max-box", type=int, default=8, help="enumeration degree cap override")
        p.add_argument("--output", type=Path, default=None)
        p.add_argument("--format", choices=["json", "text"], default="json")

    p_analyze = sub.add_parser("analyze", help="field invariants, automorphisms, warnings")
    p_analyze.add_argument("field", type=Path)
    add_common(p_analyze)

    p_nb = sub.add_parser("normal-basis", help="construct and certify a normal basis")
    p_nb.add_argument("field", type=Path)
    p_nb.add_argument("--method", choices=["auto", "artin", "lattice", "quadratic"], default="auto")
    p_nb.add_argument("--reference-c2", type=str, default=None, help="reference constant for the quadratic ratio report")
    add_common(p_nb)

    p_verify = sub.add_parser("verify", help="re-check a serialized certificate")
    p_verify.add_argument("certificate", type=Path)

    p_corpus = sub.add_parser("corpus", help="run the bundled (or given) corpus")
    p_corpus.add_argument("fields", nargs="*", type=Path)
    p_corpus.add_argument("--method", choices=["auto", "artin", "lattice", "quadratic"], default="auto")
    p_corpus.add_argument("--output-dir", type=Path, default=None)
    p_corpus.add_argument("--precision-bits", type=int, default=128)
    p_corpus.add_argument("--max-box", type=int, default=8)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _dispatch(args)
    except (FieldInputError, FieldConstructionError, PolynomialError, DispatchError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except ReducibleDefiningPolynomialError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except NotGaloisError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_GALOIS
    except SearchExhaustedError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SEARCH_EXHAUSTED
    except (NotTotallyRealError, LatticeConsistencyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


def _dispatch(args) -> int:
    if args.command == "analyze":
        field_input = report.load_field(args.field)
        field = report.build_field(field_input)
        doc = report.analysis_document(field, field_input.label, field_input.notes)
        data = report.emit_report(doc, args.output, args.format)
        if args.output is None:
            sys.stdout.write(data.decode())
        return EXIT_OK

    if args.command == "normal-basis":
        field_input = report.load_field(args.field)
        options = PipelineOptions(
            precision_bits=args.precision_bits,
            max_box=args.max_box,
            reference_c2=Fraction(args.reference_c2) if args.reference_c2 else None,
        )
        doc, code = report.run_pipeline(field_input, method=args.method, options=options)
        data = report.emit_report(doc, args.output, args.format)
        if args.output is None:
            sys.stdout.write(data.decode())
        return code

    if args.command == "verify":
        result = report.verify_document(args.certificate)
        for check in result.checks:
            print(f"check passed: {check}")
        for failure in result.failures:
            print(f"check FAILED: {failure}")
        print("verified" if result.ok else "verification failed")
        return EXIT_OK if result.ok else EXIT_ERROR

    if args.command == "corpus":
        options = PipelineOptions(precision_bits=args.precision_bits, max_box=args.max_box)
        paths = args.fields or None
        results = report.run_corpus(paths, method=args.method, options=options)
        sys.stdout.write(report.corpus_summary(results))
        if args.output_dir is not None:
            args.output_dir.mkdir(parents=True, exist_ok=True)
            for label, doc, _ in results:
                report.emit_report(doc, args.output_dir / f"{label}.json", "json")
        return EXIT_OK

    raise FieldInputError(f"unknown command {args.command!r}")


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    sys.exit(main())
