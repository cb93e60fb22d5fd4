import random
from fractions import Fraction

import pytest

from orbitkit.catalog import builtin_catalog
from orbitkit.liealg import Covector


@pytest.fixture(scope="session")
def entries():
    return builtin_catalog()


def rand_frac(rng, lo=-9, hi=9, max_den=4):
    return Fraction(rng.randint(lo, hi), rng.randint(1, max_den))


def rand_vec(rng, n, lo=-9, hi=9, max_den=4):
    return tuple(rand_frac(rng, lo, hi, max_den) for _ in range(n))


def rand_covector(alg, rng):
    return Covector(alg, rand_vec(rng, alg.dim))


@pytest.fixture
def rng():
    return random.Random(20240810)
