import math
import os
import sys

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

SQRT2 = math.sqrt(2.0)


@pytest.fixture
def unit_square():
    return np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]])


@pytest.fixture
def rng():
    return np.random.default_rng(20261019)


def sine_prices(n=200, period=25, amp=0.1, base=100.0):
    t = np.arange(n)
    return base * np.exp(amp * np.sin(2 * np.pi * t / period))


def prices_csv(prices, with_time=False):
    lines = ["t,price"] if with_time else ["price"]
    for i, p in enumerate(prices):
        lines.append(f"{1_600_000_000 + 86400 * i},{float(p)!r}" if with_time else repr(float(p)))
    return ("\n".join(lines) + "\n").encode()


# -- acceptance summary -------------------------------------------------------------

_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_runtest_makereport(item, call):
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    num, title = mark.args
    failed = call.excinfo is not None and not call.excinfo.errisinstance(pytest.skip.Exception)
    prev = _criteria.get(num, (title, "PASS"))
    if call.when == "call" or failed:
        _criteria[num] = (title, "FAIL" if failed or prev[1] == "FAIL" else "PASS")


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_criteria):
        title, status = _criteria[num]
        terminalreporter.write_line(f"criterion {num:2d}: {status}  {title}")
