"""Certificate objects shared by the three normal-basis constructions."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal

from .heights import HeightReport
from .intervals import Comparison, RealInterval
from .numberfield import FieldElement, NumberField


@dataclass(frozen=True)
class BoundSpec:
    """A height bound: either an exact rational or radicand**(num/den)."""

    name: str
    exact: Fraction | None = None
    radicand: Fraction | None = None
    root_num: int = 1
    root_den: int = 2

    def describe(self) -> str:
        if self.exact is not None:
            return str(self.exact)
        return f"{self.radicand}^({self.root_num}/{self.root_den})"


@dataclass(frozen=True)
class ComparisonRecord:
    name: str
    verdict: Comparison
    precision: int


@dataclass
class SearchStats:
    """Deterministic counters describing how a search ran."""

    candidates_tried: int = 0
    primitive_candidates: int = 0
    shells_scanned: int = 0
    xi_box_radius: Fraction | None = None
    eval_box_radius: Fraction | None = None
    xi_vector: tuple[int, ...] | None = None
    eval_point: int | None = None
    fallback_used: bool = False
    enumerated_vectors: int = 0
    notes: list[str] = field(default_factory=list)


@dataclass
class NormalBasisCertificate:
    """The output contract: basis, exact witness, certified heights, bound.

    ``basis`` lists the conjugates of ``beta`` in automorphism order, so the
    rows of the conjugate-coordinate matrix are exactly the basis coordinate
    vectors and ``det_witness`` is that matrix's exact determinant.
    """

    method: Literal["artin", "lattice", "quadratic"]
    field: NumberField
    beta: FieldElement
    basis: list[FieldElement]
    det_witness: Fraction
    height: HeightReport
    bound: BoundSpec
    satisfied: bool | Literal["inconclusive"]
    comparisons: list[ComparisonRecord]
    stats: SearchStats
    ratio: RealInterval | None = None
    reference_ratio: RealInterval | None = None

    def height_interval(self) -> RealInterval:
        return self.height.height
