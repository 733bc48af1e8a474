import numpy as np
import pytest

from stochord import DistSpec
from stochord.scenario_files import BUNDLED, bundled


def central_diff(fn, x, rel_step=1e-6):
    x = np.asarray(x, dtype=float)
    h = rel_step * np.maximum(1.0, np.abs(x))
    return (np.asarray(fn(x + h)) - np.asarray(fn(x - h))) / (2 * h)


def cdf_slope(d, x):
    """Centered difference of the cdf, taken through 1 - sf where cdf is close to 1."""
    if float(d.cdf(x)) > 0.5:
        return -float(central_diff(d.sf, x))
    return float(central_diff(d.cdf, x))


ROUND_TRIP_DISTS = [
    DistSpec.exponential(1.0),
    DistSpec.weibull(0.5, 2.0),
    DistSpec.weibull(0.5, 2.0, 0.1),
    DistSpec.weibull(0.6, 0.2, 0.45),
    DistSpec.weibull(0.7, 1.0, 2.0),
]


@pytest.fixture(scope="session")
def ex5():
    return bundled("example5")


@pytest.fixture(scope="session")
def ex6():
    return bundled("example6")


@pytest.fixture(scope="session")
def ex6_max():
    return bundled("example6_max")


@pytest.fixture(scope="session")
def all_bundled():
    return {name: bundled(name) for name in BUNDLED}


@pytest.fixture
def dfr():
    return DistSpec.weibull(0.5, 2.0)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
