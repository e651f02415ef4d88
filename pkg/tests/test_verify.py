import pytest

from qchar.errors import UnknownSuite
from qchar.verify import SUITES, run_verify


@pytest.mark.parametrize("suite", SUITES)
def test_suite_passes(suite):
    report = run_verify(suite)
    assert report.checks and report.ok, str(report)


def test_threads_give_same_answer(monkeypatch):
    monkeypatch.setenv("QCHAR_THREADS", "4")
    a = run_verify("gw-identities")
    b = run_verify("gw-identities", threads=1)
    assert [c.name for c in a.checks] == [c.name for c in b.checks]
    assert a.ok and b.ok


def test_report_json():
    data = run_verify("chi-comparison").to_json()
    assert data["passed"] == 20 and data["failed"] == 0


def test_unknown_suite():
    with pytest.raises(UnknownSuite):
        run_verify("nope")
