"""The ten release criteria at full size, each against its runtime limit.

Every test prints one PASS/FAIL line (shown even when output is captured).
"""

import pytest

from logcount.verify import CRITERIA, run_criterion

SEED = 1


@pytest.mark.parametrize("crit", CRITERIA, ids=[f"criterion_{c.number:02d}" for c in CRITERIA])
def test_criterion(crit, capsys):
    result = run_criterion(crit, SEED)
    with capsys.disabled():
        print("\n" + result.line(timing=True))
    assert result.counterexample is None, result.counterexample
    assert result.elapsed < crit.limit, f"took {result.elapsed:.2f}s, limit {crit.limit}s"
