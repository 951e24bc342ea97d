"""Acceptance criteria, each at its stated tolerance and time limit.

Every test prints one ``[PASS]`` or ``[FAIL]`` line; the lines are also
collected into the terminal summary by ``conftest.py``.
"""

import pytest

from cavity_response.validation import CHECKS, format_result, run_check

ACCEPTANCE_LINES: list[str] = []


@pytest.mark.parametrize("number", [c[0] for c in CHECKS], ids=[f"{c[0]}-{c[1]}" for c in CHECKS])
def test_criterion(number):
    result = run_check(number)
    line = format_result(result)
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert result.passed, line
