import sys
import math

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from gwmono.figures import fixture

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

EX1_AB = math.sqrt(2) / 2
EX1_AC = 2 * math.sqrt(2) / 5
EX1_WHOLE = math.sqrt(41 / 50)
EX2_AB = 1 / 3
EX2_AC = 2 / 3
EX2_WHOLE = math.sqrt(5) / 3


@pytest.fixture
def example1():
    return fixture("example1")


@pytest.fixture
def example2():
    return fixture("example2")


def random_density(rng, dim, rank=None):
    rank = rank or dim
    g = rng.normal(size=(dim, rank)) + 1j * rng.normal(size=(dim, rank))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def random_pure(rng, dim):
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return v / np.linalg.norm(v)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("tests.test_acceptance")
    lines = getattr(mod, "LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
