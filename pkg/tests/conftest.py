import math

import pytest

from sdsosc.model import OscillatorConfig, derive_params


@pytest.fixture
def natural():
    return OscillatorConfig.natural(dim=1)


@pytest.fixture
def natural3():
    return OscillatorConfig.natural(dim=3)


@pytest.fixture
def params_half_percent(natural):
    return derive_params(0.005, 0.005, natural)


def fd1(f, x, h):
    """Five-point centered first derivative."""
    return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h)


def fd2(f, x, h):
    """Five-point centered second derivative."""
    return (-f(x + 2 * h) + 16 * f(x + h) - 30 * f(x) + 16 * f(x - h) - f(x - 2 * h)) / (12 * h * h)


def ode_residual_scale(terms):
    """(residual, scale) for a list of ODE term values at one point."""
    return abs(sum(terms)), max(abs(t) for t in terms)


def jacobi_weight_moments(a, b, kmax):
    """Exact moments int y^k (1-y)^a (1+y)^b dy via the stable split recursion."""
    cache = {}

    def m(i, j, k):
        key = (i, j, k)
        if key not in cache:
            if k == 0:
                cache[key] = math.exp(
                    (a + i + b + j + 1) * math.log(2.0)
                    + math.lgamma(a + i + 1)
                    + math.lgamma(b + j + 1)
                    - math.lgamma(a + i + b + j + 2)
                )
            else:
                cache[key] = 0.5 * (m(i, j + 1, k - 1) - m(i + 1, j, k - 1))
        return cache[key]

    return [m(0, 0, k) for k in range(kmax + 1)]
