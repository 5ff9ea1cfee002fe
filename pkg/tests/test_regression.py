from rainbow_forge import induced
from rainbow_forge.harness import regression
from rainbow_forge.harness.regression import CheckResult, exit_code, run_check, small_forests, theorem_regression_suite
from rainbow_forge.oracles import SearchBudget


def test_quick_checks_pass():
    code, results = theorem_regression_suite(only=[4, 5, 6])
    assert code == 0
    assert [r.status for r in results] == ["pass"] * 3


def test_injected_off_by_one_is_caught(monkeypatch):
    real = induced.cycles_from_pending
    monkeypatch.setattr(induced, "cycles_from_pending", lambda g, t, s: real(g, t, s)[:-1])
    res = run_check(3)
    assert res.status == "fail"
    assert "only" in res.detail or "need" in res.detail


def test_tiny_budget_reports_budget_exceeded():
    reported = []
    code, results = theorem_regression_suite(SearchBudget(max_nodes=1), only=[1, 2, 4, 5, 7, 9], report=reported.append)
    status = {r.criterion: r.status for r in results}
    assert status == {1: "budget_exceeded", 2: "budget_exceeded", 4: "pass", 5: "budget_exceeded", 7: "budget_exceeded", 9: "budget_exceeded"}
    assert code == 2
    assert reported == results


def test_exit_code_precedence():
    mk = lambda s: CheckResult(0, "x", s, "", 0.0)  # noqa: E731
    assert exit_code([mk("pass")]) == 0
    assert exit_code([mk("pass"), mk("budget_exceeded")]) == 2
    assert exit_code([mk("budget_exceeded"), mk("fail")]) == 1


def test_small_forest_catalogue():
    specs = small_forests(3)
    # labelled forests with roots: n=1: 1; n=2: 2 + 1; n=3: 3 paths x 3 roots + 3 edge+point x 2 + 1
    assert len(specs) == 1 + 3 + (9 + 6 + 1)
    assert len(set(specs)) == len(specs)


def test_result_rendering():
    res = run_check(4)
    assert res.line().startswith("[PASS] criterion 4")
    assert res.to_json()["status"] == "pass"
    assert set(regression.CHECKS) == set(range(1, 11))
