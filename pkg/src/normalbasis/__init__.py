"""Normal bases of small Weil height in Galois number fields.

Three certified constructions: an Artin-style resolvent search valid for any
Galois degree, a Minkowski-lattice method for odd prime degree, and a
height-enumeration path for quadratic fields.  Every certificate carries an
exact linear-independence witness and outward-rounded height enclosures.
"""

from .artin import (
    SearchExhaustedError,
    artin_height_bound,
    artin_search,
    find_primitive_element,
    lagrange_resolvent,
)
from .boxsearch import (
    IdenticallyZeroSuspectError,
    box_search_nonvanishing,
    iterate_box_points,
)
from .certificates import BoundSpec, NormalBasisCertificate, SearchStats
from .heights import HeightReport, mahler_measure, weil_height
from .intervals import (
    Comparison,
    ComplexRectangle,
    NthRootValue,
    RealInterval,
    certified_compare,
)
from .intpoly import IntPolynomial, count_real_roots, resultant, resultant_and_discriminant
from .linalg import RationalMatrix, kernel_and_det
from .lll import lll_reduce_basis, lll_reduce_gram
from .minkowski import (
    DispatchError,
    MinkowskiLattice,
    MinimaResult,
    NotTotallyRealError,
    dubickas_independence,
    lattice_normal_basis,
    minkowski_lattice,
    quadratic_normal_basis,
    supnorm_minima,
)
from .numberfield import (
    Automorphism,
    FieldConstructionError,
    FieldElement,
    NotGaloisError,
    NumberField,
    ReducibleDefiningPolynomialError,
    conjugate_coordinate_matrix,
    find_automorphisms,
    make_field,
)
from .report import (
    FieldInput,
    FieldInputError,
    PipelineOptions,
    load_field,
    run_pipeline,
    verify_document,
)
from .roots import EmbeddingSet, RootEnclosure, isolate_roots

__all__ = [
    "Automorphism",
    "BoundSpec",
    "Comparison",
    "ComplexRectangle",
    "DispatchError",
    "EmbeddingSet",
    "FieldConstructionError",
    "FieldElement",
    "FieldInput",
    "FieldInputError",
    "HeightReport",
    "IdenticallyZeroSuspectError",
    "IntPolynomial",
    "MinimaResult",
    "MinkowskiLattice",
    "NormalBasisCertificate",
    "NotGaloisError",
    "NotTotallyRealError",
    "NthRootValue",
    "NumberField",
    "PipelineOptions",
    "RationalMatrix",
    "RealInterval",
    "ReducibleDefiningPolynomialError",
    "RootEnclosure",
    "SearchExhaustedError",
    "SearchStats",
    "artin_height_bound",
    "artin_search",
    "box_search_nonvanishing",
    "certified_compare",
    "conjugate_coordinate_matrix",
    "count_real_roots",
    "dubickas_independence",
    "find_automorphisms",
    "find_primitive_element",
    "isolate_roots",
    "iterate_box_points",
    "kernel_and_det",
    "lagrange_resolvent",
    "lattice_normal_basis",
    "lll_reduce_basis",
    "lll_reduce_gram",
    "load_field",
    "make_field",
    "mahler_measure",
    "minkowski_lattice",
    "quadratic_normal_basis",
    "resultant",
    "resultant_and_discriminant",
    "run_pipeline",
    "supnorm_minima",
    "verify_document",
    "weil_height",
]

__version__ = "0.1.0"
