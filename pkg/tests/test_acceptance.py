"""The twelve acceptance criteria, one test each, at their stated tolerances.

Each test prints a single pass/fail line; the lines are also collected and
shown in an "acceptance criteria" section at the end of the pytest run.
Run directly (``python3 tests/test_acceptance.py``) for just the lines.
"""

import sys

import pytest

import conftest
from delannoy.acceptance import CHECKS, DEFAULT_SEED, run_criterion


@pytest.mark.parametrize("cid", sorted(CHECKS))
def test_criterion(cid):
    res = run_criterion(cid, DEFAULT_SEED)
    line = res.line() + f"  [{res.seconds:.1f}s]"
    conftest.ACCEPTANCE_LINES.append(line)
    print(line)
    assert res.passed, f"observed {res.observed!r}, expected {res.expected!r}, tolerance {res.tolerance}"


@pytest.mark.parametrize("cid", sorted(CHECKS))
def test_injected_fault_is_caught(cid):
    assert not run_criterion(cid, DEFAULT_SEED, fault=True).passed


if __name__ == "__main__":
    failed = 0
    for cid in sorted(CHECKS):
        res = run_criterion(cid, DEFAULT_SEED)
        print(res.line())
        failed += not res.passed
    sys.exit(1 if failed else 0)
