import numpy as np
import pytest

from ldcu import kernels
from ldcu.euler import conserved_from_primitive


def random_primitive(rng, size, ndim=1):
    rho = rng.uniform(0.1, 5.0, size)
    p = rng.uniform(0.05, 10.0, size)
    vel = [rng.uniform(-3.0, 3.0, size) for _ in range(ndim)]
    return np.stack([rho, *vel, p])


def random_states(rng, size, ndim=1, gamma=1.4):
    return conserved_from_primitive(random_primitive(rng, size, ndim), gamma)


@pytest.fixture
def rng():
    return np.random.default_rng(20231019)


@pytest.fixture(params=sorted(kernels.BACKENDS))
def backend(request):
    return request.param


# one line per acceptance criterion, filled by test_acceptance.py
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[key])
