"""Deterministic small-first enumeration of integer points in sup-norm boxes.

A nonzero polynomial of total degree m in n variables has a non-root in the
integer box of sup-norm radius (m+2)/2; ``box_search_nonvanishing`` finds the
first such point under the canonical visiting order.

The visiting order is shared by every search in the package: points are
grouped into shells of equal sup-norm, and within a shell sorted by a
per-coordinate key (magnitude first, positive before negative) read from the
last coordinate down to the first, so low-index coordinates vary before
high-index ones.  Under this order the 1-dimensional sequence is
0, 1, -1, 2, -2, ... and (1, 0, ..., 0) precedes (0, 1, 0, ..., 0).
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Callable, Iterator, Sequence


class IdenticallyZeroSuspectError(RuntimeError):
    """The avoidance box was exhausted: the map appears identically zero."""


def coordinate_key(value: int) -> tuple[int, int]:
    return (abs(value), 0 if value >= 0 else 1)


def lex_key(point: Sequence[int]) -> tuple:
    """Small-first lexicographic key: per-coordinate (magnitude, sign with
    positive first), read from the last coordinate down so that low-index
    coordinates vary fastest."""
    return tuple(coordinate_key(c) for c in reversed(point))


def point_key(point: Sequence[int]) -> tuple:
    """Total order on integer points: sup-norm shell, then small-first."""
    return (max((abs(c) for c in point), default=0), lex_key(point))


def canonical_sign(point: Sequence[int]) -> tuple[int, ...]:
    """The representative of {v, -v} that comes first in the small-first
    lexicographic order."""
    v = tuple(point)
    w = tuple(-c for c in point)
    return v if lex_key(v) <= lex_key(w) else w


def shell_points(n: int, radius: int) -> list[tuple[int, ...]]:
    """All points of Z^n with sup-norm exactly ``radius``, sorted."""
    if radius == 0:
        return [tuple([0] * n)]
    pts = [
        p
        for p in itertools.product(range(-radius, radius + 1), repeat=n)
        if max(abs(c) for c in p) == radius
    ]
    pts.sort(key=point_key)
    return pts


def iterate_box_points(n: int, radius: int | Fraction, skip_origin: bool = False) -> Iterator[tuple[int, ...]]:
    """Points of Z^n with sup-norm <= radius, in the canonical order."""
    rmax = int(Fraction(radius))
    for shell in range(rmax + 1):
        for p in shell_points(n, shell):
            if skip_origin and shell == 0:
                continue
            yield p


def box_radius(total_degree: int) -> Fraction:
    return Fraction(total_degree + 2, 2)


def box_search_nonvanishing(
    poly: Callable[[Sequence[int]], object],
    n_vars: int,
    total_degree: int,
) -> tuple[int, ...]:
    """First integer point of sup-norm <= (m+2)/2 where ``poly`` is nonzero.

    ``poly`` receives the point as a tuple and must evaluate exactly; any
    return value comparable against 0 works.  Exhausting the box means the
    caller's map violated the nonvanishing precondition.
    """
    radius = box_radius(total_degree)
    for point in iterate_box_points(n_vars, radius):
        if poly(point) != 0:
            return point
    raise IdenticallyZeroSuspectError(
        f"no nonvanishing point in the sup-norm box of radius {radius} "
        f"({n_vars} variables, degree {total_degree}); "
        "the polynomial is likely identically zero"
    )
