import math

import numpy as np
import pytest

from padeforge import ComplexPoly, TaylorSeries


@pytest.fixture(scope="session")
def exp_series():
    return TaylorSeries([1.0 / math.factorial(v) for v in range(30)])


@pytest.fixture(scope="session")
def geom_series():
    return TaylorSeries(np.ones(30))


def random_poly(rng, max_deg, unit_square=True):
    """Random polynomial with complex coefficients in the unit square."""
    deg = int(rng.integers(0, max_deg + 1))
    coeffs = rng.uniform(0, 1, deg + 1) + 1j * rng.uniform(0, 1, deg + 1)
    if coeffs[-1] == 0:
        coeffs[-1] = 1.0
    return ComplexPoly(coeffs)
