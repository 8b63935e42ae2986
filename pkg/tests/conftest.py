import sys
import os

sys.path.insert(0, os.path.dirname(__file__))

_ACCEPTANCE: dict = {}


def record_acceptance(number: int, description: str, elapsed: float) -> None:
    _ACCEPTANCE[number] = (description, elapsed)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    reports = terminalreporter.stats.get("passed", []) + \
        terminalreporter.stats.get("failed", [])
    outcomes = {}
    for rep in reports:
        if "test_acceptance.py::test_criterion_" in rep.nodeid:
            num = int(rep.nodeid.rsplit("_", 1)[1].split("[")[0])
            outcomes[num] = rep.outcome
    if not outcomes:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for num in sorted(outcomes):
        desc, elapsed = _ACCEPTANCE.get(num, ("", float("nan")))
        status = "PASS" if outcomes[num] == "passed" else "FAIL"
        terminalreporter.write_line(
            f"criterion {num:2d}: {status} ({elapsed:6.2f}s) {desc}"
        )
