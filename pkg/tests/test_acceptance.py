"""Acceptance criteria 1-10, one test and one PASS/FAIL line each.

Run directly (python3 tests/test_acceptance.py) for just the summary lines.
"""

import json

import pytest

from mouldlab.acceptance import CRITERIA, run_suite


def line(c):
    return "criterion %2d: %s  %s" % (c["id"], "PASS" if c["passed"] else "FAIL", c["name"])


@pytest.fixture(scope="module")
def report():
    rep, timings = run_suite(seed=0)
    return rep, timings


@pytest.mark.parametrize("cid", [c for c, _, _ in CRITERIA])
def test_criterion(report, cid, capsys):
    rep, _ = report
    c = next(c for c in rep["criteria"] if c["id"] == cid)
    with capsys.disabled():
        print("\n" + line(c))
    assert c["passed"], c["detail"]
    assert not c.get("partial")


def test_runtime_budget(report):
    _, timings = report
    assert timings["total"] < 600


@pytest.mark.slow
def test_report_deterministic():
    a, _ = run_suite(seed=7, workers=1)
    b, _ = run_suite(seed=7, workers=2)
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)
    assert a["passed"]


if __name__ == "__main__":
    rep, timings = run_suite(seed=0)
    for c in rep["criteria"]:
        print(line(c))
    print("total %.1fs" % timings["total"])
