import random

from logcount import verify
from logcount.counting import PathCount
from logcount.encoding import BitString
from logcount.verify import (
    CRITERIA,
    CriterionResult,
    _mutation_sites,
    random_machine,
    report,
    run_all,
    run_criterion,
)


def test_criteria_numbering():
    assert [c.number for c in CRITERIA] == list(range(1, 11))


def test_report_is_deterministic():
    a = report(run_all(seed=4, cases=2), seed=4)
    b = report(run_all(seed=4, cases=2), seed=4)
    assert a == b
    assert a.endswith("10/10 criteria passed\n")


def test_counterexample_is_reported():
    r = CriterionResult(3, "demo", 5, 1.0, 0.1, "case 2: boom")
    assert not r.passed
    assert "counterexample: case 2: boom" in r.line()


def test_over_limit_fails():
    r = CriterionResult(1, "demo", 5, 1.0, 2.5)
    assert not r.passed
    assert "over the 1s limit" in r.line()


def test_single_criterion_with_override():
    r = run_criterion(CRITERIA[9], seed=9, cases=7)
    assert r.cases == 7 and r.passed


def test_chain_suite_catches_a_wrong_law(monkeypatch):
    monkeypatch.setattr(verify, "multigraph_stcon_count", lambda *a, **k: PathCount.of(2))
    r = run_criterion(CRITERIA[9], seed=1, cases=20)
    assert r.counterexample is not None
    assert r.counterexample.startswith("case ")


def test_mutation_sites_cover_set_bits():
    Y = BitString([3, 10, 40])
    sites = _mutation_sites(random.Random(0), Y, [5, 6], 100)
    assert {3, 10, 40, 5, 6} <= set(sites)


def test_random_machines_are_valid():
    rng = random.Random(0)
    for _ in range(50):
        M = random_machine(rng)
        assert all(t.src != M.accept for t in M.delta)
        assert all(t.input_move != "R" for t in M.delta if t.read == "$")
