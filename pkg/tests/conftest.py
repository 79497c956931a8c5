import random
import sys
from pathlib import Path

import pytest

from semitor.exact import IntervalRect, NumberField, RationalPolynomial
from semitor.exact.integer import det
from semitor.lattice import validate

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "fixtures"

P = RationalPolynomial
R = IntervalRect


def gaussian_field():
    return NumberField(P([1, 0, 1]), R.around(0, 1, "1/2"))


def cubic_field():
    # complex root of t^3 - 2 with positive imaginary part
    return NumberField(P([-2, 0, 0, 1]), R.around("-63/100", "109/100", "1/10"))


def cyclotomic8_field():
    return NumberField(P([1, 0, 0, 0, 1]), R.around("7/10", "7/10", "1/10"))


def real_cubic_field():
    # the real root of t^3 - t - 1
    return NumberField(P([-1, -1, 0, 1]), R(*map(str, ["13/10", "14/10", "-1/10", "1/10"])))


def imag_quadratic_field(n):
    """Q(sqrt(-n)) with the root near i*sqrt(n)."""
    import math
    s = math.isqrt(n * 10000)
    return NumberField(P([n, 0, 1]), R(-1, 1, f"{s - 50}/100", f"{s + 50}/100"))


@pytest.fixture(scope="session")
def Ki():
    return gaussian_field()


@pytest.fixture(scope="session")
def Kc():
    return cubic_field()


@pytest.fixture(scope="session")
def Kz():
    return cyclotomic8_field()


@pytest.fixture(scope="session")
def Kr():
    return real_cubic_field()


def split_lattice(K=None):
    K = K or gaussian_field()
    i = K.gen
    return validate(K, [(1, 0), (0, 1), (0, i)])


def cubic_lattice(K=None):
    K = K or cubic_field()
    t = K.gen
    return validate(K, [(1, 0), (0, 1), (t, t * t)])


def generic_lattice(K=None):
    K = K or cyclotomic8_field()
    z = K.gen
    return validate(K, [(1, 0), (0, 1), (z * z, z + z ** 3)])


@pytest.fixture(scope="session")
def split_fixture(Ki):
    return split_lattice(Ki)


@pytest.fixture(scope="session")
def cubic_fixture(Kc):
    return cubic_lattice(Kc)


@pytest.fixture(scope="session")
def generic_fixture(Kz):
    return generic_lattice(Kz)


def random_unimodular(rng, size=3, height=2):
    while True:
        M = [[rng.randint(-height, height) for _ in range(size)] for _ in range(size)]
        if abs(det(M)) == 1:
            return M


def scramble(lattice, rng):
    """Same lattice, generators recombined by a random unimodular matrix."""
    M = random_unimodular(rng)
    F = lattice.field
    gens = [lattice.combination(row) for row in M]
    return validate(F, gens), M


def random_element(K, rng, height=5, den=3):
    from semitor.exact.rational import mpq
    return K.element([mpq(rng.randint(-height, height), rng.randint(1, den))
                      for _ in range(K.degree)])


@pytest.fixture
def rng():
    return random.Random(20261017)
