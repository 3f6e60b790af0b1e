import random

import pytest
from hypothesis import HealthCheck, settings

from linea.multipoly import Polynomial

settings.register_profile(
    "linea", deadline=None, max_examples=40,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large])
settings.load_profile("linea")


def random_linear(rng: random.Random, nvars: int, bound: int = 3) -> Polynomial:
    while True:
        coeffs = [rng.randint(-bound, bound) for _ in range(nvars)]
        if any(coeffs):
            return Polynomial.linear(coeffs)


def random_form(rng: random.Random, nvars: int, degree: int, terms: int = 3,
                bound: int = 5) -> Polynomial:
    out = Polynomial.zero(nvars)
    while not out:
        for _ in range(terms):
            exps = [0] * nvars
            for _ in range(degree):
                exps[rng.randrange(nvars)] += 1
            c = rng.randint(-bound, bound)
            out = out + Polynomial({tuple(exps): c}, nvars) if c else out
    return out


@pytest.fixture
def rng():
    return random.Random(20261017)
