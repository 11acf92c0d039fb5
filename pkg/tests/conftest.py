import numpy as np
import pytest

from indexwhittaker import DecayClass, GridFunction, QuadratureConfig, default_grid


@pytest.fixture
def cfg():
    return QuadratureConfig()


@pytest.fixture
def cfg_fast():
    return QuadratureConfig(rel_tol=1e-9, abs_tol=1e-13, max_refinement_levels=7)


def rel_err(got, want):
    want = complex(want)
    if want == 0:
        return abs(complex(got))
    return abs(complex(got) - want) / abs(want)


def power_exp_grid_function(p, q, lo=1e-3, hi=70.0, n=200):
    """f(x) = x**p * exp(-q*x) on a log grid with the exact decay class."""
    grid = default_grid(lo, hi, n)
    return GridFunction(grid, grid**p * np.exp(-q * grid), DecayClass(p, p, q))
