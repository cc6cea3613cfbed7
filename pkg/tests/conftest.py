import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from specled import (
    DEFAULT_GRID,
    ColorMatcher,
    Reflectance,
    load_default_matcher,
    load_fixture_problem,
)

settings.register_profile(
    "det",
    derandomize=True,
    max_examples=200,
    suppress_health_check=[HealthCheck.too_slow],
    deadline=None,
)
settings.load_profile("det")


@pytest.fixture(scope="session")
def toy_matcher():
    """All-ones observer: every color collapses to the equal-energy point."""
    ones = np.ones(DEFAULT_GRID.count)
    return ColorMatcher(grid=DEFAULT_GRID, cx=ones, cy=ones, cz=ones)


@pytest.fixture(scope="session")
def real_matcher():
    return load_default_matcher()


@pytest.fixture(scope="session")
def iso_problem():
    return load_fixture_problem("iso_3ch")


@pytest.fixture(scope="session")
def scc_problem():
    return load_fixture_problem("scc_3ch")


@pytest.fixture(scope="session")
def bank3(iso_problem):
    return iso_problem.bank


def gauss_reflectance(mu, sigma, amp=0.8, base=0.1, grid=DEFAULT_GRID):
    lam = grid.wavelengths()
    return Reflectance(
        grid=grid,
        values=np.clip(base + amp * np.exp(-0.5 * ((lam - mu) / sigma) ** 2), 0, 1),
    )
