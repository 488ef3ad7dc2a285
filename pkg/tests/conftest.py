import math

import numpy as np
import pytest

from spacings2d import gfun
from spacings2d.moments import compute_moments


@pytest.fixture(params=["square", "absdev", "neglog", "identity"])
def kernel(request):
    return gfun.builtin(request.param)


@pytest.fixture(scope="session")
def square():
    return gfun.builtin("square")


@pytest.fixture(scope="session")
def square_moments(square):
    return compute_moments(square)


def brute_v2(dx, dy, g):
    """Unoptimized double loop with an exactly rounded sum."""
    n = len(dx)
    return math.fsum(float(g.eval((n * a) * (n * b))) for a in dx for b in dy)


@pytest.fixture
def rng():
    return np.random.default_rng(20261016)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
