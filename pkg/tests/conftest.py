import numpy as np
import pytest
from hypothesis import settings

from dnchaos.funcspace import Interval

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

INTERVALS = [Interval(0.0, 1.0), Interval(-2.0, 3.0)]


@pytest.fixture(params=INTERVALS, ids=["unit", "wide"])
def interval(request):
    return request.param


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def direct_chebyshev_sum(c, s):
    """Independent evaluation: build T_k(s) by the three-term recurrence and sum."""
    s = np.asarray(s, dtype=float)
    t_prev, t_cur = np.ones_like(s), s.copy()
    total = c[0] * t_prev
    if len(c) > 1:
        total = total + c[1] * t_cur
    for k in range(2, len(c)):
        t_prev, t_cur = t_cur, 2 * s * t_cur - t_prev
        total = total + c[k] * t_cur
    return total


# one line per acceptance criterion, printed at the end of the run
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
