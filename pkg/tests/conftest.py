import re
from collections import defaultdict

_CRITERION = re.compile(r"test_criterion_(\d+)_(\w+)")
_results: dict[int, list[tuple[str, str]]] = defaultdict(list)


def pytest_runtest_logreport(report):
    m = _CRITERION.search(report.nodeid)
    if not m:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _results[int(m.group(1))].append((m.group(2), report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_results):
        checks = _results[number]
        status = "PASS" if all(outcome == "passed" for _, outcome in checks) else "FAIL"
        detail = ", ".join(f"{name}={outcome}" for name, outcome in checks)
        terminalreporter.write_line(f"criterion {number:2d}: {status}  ({detail})")
