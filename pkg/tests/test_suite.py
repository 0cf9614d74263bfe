import json

import pytest

from complementarity.suite import CHECKS, CheckResult, RunConfig, SuiteReport, check_bell, check_mub, run_check


def test_run_config_validation():
    with pytest.raises(ValueError):
        RunConfig(eps=0)
    with pytest.raises(ValueError):
        RunConfig(samples=0)
    with pytest.raises(ValueError):
        RunConfig(format="xml")


def test_overall_verdict_is_conjunction():
    ok = CheckResult("a", True, {}, "x")
    bad = CheckResult("b", False, {}, "y")
    assert SuiteReport([ok, ok], 0, 1e-10).passed
    assert not SuiteReport([ok, bad], 0, 1e-10).passed
    assert "FAIL  b" in SuiteReport([ok, bad], 0, 1e-10).to_text()


def test_tight_tolerance_fails_gracefully():
    cfg = RunConfig(eps=1e-30)
    res = run_check(check_mub, cfg)
    assert not res.passed
    assert res.measured["p=3"]["max_deviation"] > 0
    # exact checks can still pass at any tolerance
    assert run_check(check_bell, cfg).measured["local_expectation_exact"]


def test_reports_carry_anchor_strings():
    res = run_check(check_bell, RunConfig())
    d = res.to_dict()
    assert d["anchor"] and d["verdict"] == "pass"
    assert "seconds" not in d and "seconds" in res.to_dict(timing=True)
    json.dumps(d)


def test_every_criterion_has_a_check():
    assert len(CHECKS) == 10
