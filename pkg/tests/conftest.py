import pytest

from normalbasis.numberfield import make_field


_FIELD_SPECS = {
    "golden": ([-1, -1, 1], None),
    "sqrt5": ([-5, 0, 1], [[1, 0], ["1/2", "1/2"]]),
    "sqrt5_power": ([-5, 0, 1], None),
    "gaussian": ([1, 0, 1], None),
    "eisenstein": ([1, 1, 1], None),
    "cubic49": ([-1, -2, 1, 1], None),
    "cubic81": ([-1, -3, 0, 1], None),
    "cyclo5": ([1, 1, 1, 1, 1], None),
    "quintic11": ([1, 3, -3, -4, 1, 1], None),
    "nongalois": ([-2, 0, 0, 1], None),
    "sqrt2": ([-2, 0, 1], None),
}

_CACHE = {}


def get_field(name):
    """Session-wide field cache; automorphism recognition runs once per field."""
    if name not in _CACHE:
        coeffs, basis = _FIELD_SPECS[name]
        from fractions import Fraction

        parsed = None
        if basis is not None:
            parsed = [[Fraction(x) for x in row] for row in basis]
        _CACHE[name] = make_field(coeffs, parsed)
    return _CACHE[name]


@pytest.fixture(scope="session")
def fields():
    return get_field


GALOIS_CORPUS = [
    "golden",
    "sqrt5",
    "gaussian",
    "eisenstein",
    "cubic49",
    "cubic81",
    "cyclo5",
    "quintic11",
]

TOTALLY_REAL_CORPUS = ["golden", "sqrt5", "cubic49", "cubic81", "quintic11"]
PRIME_DEGREE_CORPUS = ["cubic49", "cubic81", "quintic11"]
