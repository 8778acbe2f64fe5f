"""The acceptance gate: every criterion runs at its pinned tolerance and
prints one pass/fail line (run pytest with -s to see them)."""

import pytest

from cactusflower.acceptance import ALL_CRITERIA, DEFAULT_SEED


@pytest.mark.parametrize("criterion", ALL_CRITERIA, ids=lambda f: f.__name__)
def test_criterion(criterion):
    result = criterion(DEFAULT_SEED)
    print(result.line())
    assert result.passed, result.line()
