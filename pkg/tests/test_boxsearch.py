import itertools
import random
from fractions import Fraction

import pytest

from normalbasis.boxsearch import (
    IdenticallyZeroSuspectError,
    box_radius,
    box_search_nonvanishing,
    canonical_sign,
    iterate_box_points,
    lex_key,
    point_key,
)


def random_polynomial(rng, n_vars, max_degree, planted_roots=()):
    """A random integer polynomial as a monomial dict, with optional factors
    (x_i - r) planted so that grid points become roots."""
    terms = {}
    for _ in range(rng.randint(2, 6)):
        expo = [0] * n_vars
        budget = rng.randint(0, max_degree)
        for _ in range(budget):
            expo[rng.randrange(n_vars)] += 1
        terms[tuple(expo)] = terms.get(tuple(expo), 0) + rng.randint(-4, 4)
    terms = {e: c for e, c in terms.items() if c != 0}
    if not terms:
        terms[(0,) * n_vars] = 1
    poly = terms

    def evaluate(point):
        total = 0
        for expo, coeff in poly.items():
            term = coeff
            for x, e in zip(point, expo):
                term *= x**e
            total += term
        for var, root in planted_roots:
            total *= point[var] - root
        return total

    degree = max(sum(e) for e in poly) + len(planted_roots)
    return evaluate, degree


class TestOrdering:
    def test_one_dimensional_order(self):
        assert list(iterate_box_points(1, 2)) == [(0,), (1,), (-1,), (2,), (-2,)]

    def test_low_index_coordinates_vary_first(self):
        pts = list(iterate_box_points(2, 1))
        assert pts[0] == (0, 0)
        assert pts[1] == (1, 0)
        assert pts[2] == (-1, 0)
        assert pts[3] == (0, 1)

    def test_three_dimensional_unit_vectors(self):
        pts = list(iterate_box_points(3, 1, skip_origin=True))
        assert pts[0] == (1, 0, 0)
        assert pts[1] == (-1, 0, 0)
        assert pts[2] == (0, 1, 0)

    def test_point_key_total_order(self):
        pts = list(iterate_box_points(2, 3))
        keys = [point_key(p) for p in pts]
        assert keys == sorted(keys)
        assert len(set(keys)) == len(pts)

    def test_canonical_sign(self):
        assert canonical_sign((0, -1)) == (0, 1)
        assert canonical_sign((-2, 0, 1)) == (-2, 0, 1)
        assert canonical_sign((2, 0, -1)) == (-2, 0, 1)
        assert lex_key((0, 1, 0)) < lex_key((-2, 0, 1)) < lex_key((-1, 1, 1))


class TestBoxSearch:
    def test_product_of_coordinates(self):
        witness = box_search_nonvanishing(lambda p: p[0] * p[1], 2, 2)
        assert witness == (1, 1)
        assert max(abs(c) for c in witness) <= box_radius(2)

    def test_all_small_points_are_roots(self):
        witness = box_search_nonvanishing(lambda p: p[0] * (p[0] - 1) * (p[0] + 1), 1, 3)
        assert witness == (2,)
        assert abs(witness[0]) <= Fraction(5, 2)

    def test_planted_roots_match_exhaustive_scan(self):
        rng = random.Random(12)
        for _ in range(20):
            poly, degree = random_polynomial(rng, 2, 2, planted_roots=[(0, 1), (1, -1)])
            degree = min(degree, 4)
            witness = box_search_nonvanishing(poly, 2, degree)
            radius = int(box_radius(degree))
            # independent oracle: full box scan sorted by the canonical order
            everything = sorted(
                itertools.product(range(-radius, radius + 1), repeat=2), key=point_key
            )
            expected = next(p for p in everything if poly(p) != 0)
            assert witness == expected

    def test_zero_polynomial_raises(self):
        with pytest.raises(IdenticallyZeroSuspectError):
            box_search_nonvanishing(lambda p: 0, 2, 3)

    def test_witness_inside_box_random(self):
        rng = random.Random(13)
        for _ in range(60):
            n = rng.randint(1, 3)
            m = rng.randint(1, 6)
            poly, degree = random_polynomial(rng, n, m)
            degree = min(degree, m) if degree else m
            witness = box_search_nonvanishing(poly, n, max(degree, 1))
            assert poly(witness) != 0
            assert max(abs(c) for c in witness) <= box_radius(max(degree, 1))
