"""Acceptance criteria; one PASS/FAIL line per criterion (and per sub-check) is printed
in the terminal summary.  Criteria 5 and 7 fail on specific sub-checks and are
marked xfail(strict=True) so that an unexpected pass is reported too."""

import pytest

from artifact import acceptance

LINES = []


def _marks(n):
    if n in acceptance.EXPECTED_FAILURES:
        return [pytest.mark.xfail(strict=True, reason="published form fails on named sub-checks")]
    return []


@pytest.mark.parametrize("number", [pytest.param(n, marks=_marks(n), id=f"criterion{n}")
                                    for n, _, _ in acceptance.CRITERIA])
def test_criterion(number):
    passed, lines, _ = acceptance.evaluate(number)
    LINES.extend(lines)
    print("\n".join(lines))
    assert passed, "\n".join(lines)
