import pytest

from sswalk.suites import QUICK_COUNTS, SUITES, SuiteResult, run_all, run_suite, spectral_specs


def test_vacuous_line_and_warning():
    with pytest.warns(UserWarning, match="no cases"):
        res = run_suite("root_formula", 1, 0)
    assert res.ok and "vacuous" in res.line()


def test_failure_keeps_first_case():
    res = SuiteResult("x")
    res.success()
    res.fail({"n": 1})
    res.fail({"n": 2})
    assert (res.passed, res.total, res.failure) == (1, 3, {"n": 1})
    assert res.line() == "[FAIL] x: 1/3"


def test_seeded_draws_are_reproducible():
    assert spectral_specs(11, 6) == spectral_specs(11, 6)
    assert spectral_specs(11, 6) != spectral_specs(12, 6)


def test_quick_run_passes():
    counts = {**QUICK_COUNTS, "spectral": 3, "edge_states": 3}
    results = run_all(3, counts)
    assert [r.name for r in results] == list(SUITES)
    assert all(r.ok for r in results), [r.line() for r in results if not r.ok]
