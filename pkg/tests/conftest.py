import math
import os
import sys

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

from charlier_zeros import find_roots, trace_curve  # noqa: E402


@pytest.fixture(scope="session")
def curve_a1():
    return trace_curve(1.0, 513)


@pytest.fixture(scope="session")
def curve_a12():
    return trace_curve(1.0 / 12.0, 513)


@pytest.fixture(scope="session")
def roots_100_a1():
    return find_roots(100, 1.0, 0)


@pytest.fixture(scope="session")
def roots_100_a12():
    return find_roots(100, 1.0 / 12.0, 0)


def rel(u, v):
    return abs(u - v) / max(abs(v), 1e-300)


def in_rectangle(z, a, slack=0.0):
    return -slack <= z.real <= 1 + slack and abs(z.imag) <= 2 * math.sqrt(a) + slack


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
