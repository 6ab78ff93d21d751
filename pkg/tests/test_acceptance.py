"""The ten acceptance criteria at their stated tolerances and time limits.

Each test prints one PASS/FAIL line; the lines are repeated in the terminal
summary so they appear even when output is captured.
"""
from __future__ import annotations

import pytest

from cmotives.acceptance import CHECKS, run_check

LINES: list = []


@pytest.mark.parametrize("number", [c[0] for c in CHECKS], ids=[f"criterion_{c[0]}" for c in CHECKS])
def test_acceptance_criterion(number):
    res = run_check(number)
    LINES.append(res.line())
    print(res.line())
    assert res.passed, res.detail
