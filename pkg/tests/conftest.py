from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from delannoy.params import Params

settings.register_profile(
    "default", deadline=None, max_examples=40, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


def rationals(lo=-6, hi=6, max_den=5):
    return st.builds(Fraction, st.integers(lo, hi), st.integers(1, max_den))


def params_strategy(lo=-6, hi=6, max_den=5):
    r = rationals(lo, hi, max_den)
    return st.builds(Params, r, r, r, r, r)


def nonneg_params(max_den=5):
    return params_strategy(0, 6, max_den)


# filled by tests/test_acceptance.py, printed after the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
