"""Acceptance gate: every criterion of the suite must pass.

The criteria live in capfree.selftest (also run by `capfree selftest`);
this module executes each one and prints its pass/fail line.
"""

import pytest

from capfree import selftest


@pytest.mark.parametrize(
    "criterion", selftest.ALL_CRITERIA,
    ids=[c.__name__.removeprefix("criterion_") for c in selftest.ALL_CRITERIA])
def test_criterion(criterion):
    result = criterion()
    status = "pass" if result.passed else "FAIL"
    print(f"[{status}] {result.name}: {result.detail} ({result.seconds:.1f}s)")
    assert result.passed, f"{result.name}: {result.detail}"
