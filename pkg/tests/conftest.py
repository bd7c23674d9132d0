"""Suite-wide configuration: prints one PASS/FAIL line per acceptance
criterion after the run, so the gate's verdicts are readable at a glance."""

from __future__ import annotations

_ACCEPTANCE_RESULTS: dict[str, str] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _ACCEPTANCE_RESULTS[report.nodeid] = report.outcome


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for nodeid in sorted(_ACCEPTANCE_RESULTS):
        outcome = _ACCEPTANCE_RESULTS[nodeid]
        status = "PASS" if outcome == "passed" else "FAIL"
        name = nodeid.split("::")[-1]
        terminalreporter.write_line(f"{status}  {name}")
