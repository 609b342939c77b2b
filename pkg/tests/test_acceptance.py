"""The eleven acceptance criteria at exact tolerances, one pass/fail line each."""

import pytest

from slspheres.exact_linalg import GenericityPolicy
from slspheres.suites import CRITERIA

POLICY = GenericityPolicy(seed=0, trials=3)


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number, capsys):
    result = CRITERIA[number](POLICY)
    failed = [it.get("name") for it in result.items if not it["pass"]]
    with capsys.disabled():
        print(f"\ncriterion {number}: {'PASS' if result.passed else 'FAIL'} ({result.title}; {len(result.items)} items)")
    assert result.items
    assert result.passed, f"failing items: {failed}"
