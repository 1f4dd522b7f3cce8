import numpy as np
import pytest

from osbound import Empirical, Exponential, StandardNormal, Uniform

CONTINUOUS = [Uniform(), Uniform(-1.0, 3.0), StandardNormal(), Exponential(1.0), Exponential(2.0)]

_ACCEPTANCE_LINES = []


def record_acceptance(line: str) -> None:
    _ACCEPTANCE_LINES.append(line)


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(params=CONTINUOUS, ids=lambda d: repr(d))
def continuous_dist(request):
    return request.param


@pytest.fixture
def empirical_dist():
    return Empirical.from_sample(StandardNormal().sample(7, 40))


def random_weights(rng: np.random.Generator, n: int) -> np.ndarray:
    """Random point of the ordered simplex (sorted Dirichlet draw)."""
    w = np.sort(rng.dirichlet(np.ones(n)))[::-1]
    return w / w.sum()
