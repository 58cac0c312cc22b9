import numpy as np
import pytest

from skewcurves import FourierSupport

ACCEPTANCE_LINES = []


def random_support(rng, degree=8, a0=None, scale=1.0):
    c = rng.normal(size=degree) * scale
    s = rng.normal(size=degree) * scale
    return FourierSupport(rng.normal() if a0 is None else a0, c, s)


def convex_support(rng, degree=6):
    """Random support with a0 large enough that p + p'' > 0 everywhere."""
    k = np.arange(1, degree + 1)
    c = rng.normal(size=degree) * 0.3 / k**2
    s = rng.normal(size=degree) * 0.3 / k**2
    bound = np.sum(np.abs(1 - k**2) * (np.abs(c) + np.abs(s)))
    return FourierSupport(bound + 0.5 + rng.uniform(), c, s)


@pytest.fixture
def rng():
    return np.random.default_rng(20261016)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda l: int(l.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
