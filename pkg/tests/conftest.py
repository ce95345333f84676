import re

_CRITERION = re.compile(r"test_acceptance\.py::test_criterion_(\d+)_(\w+)")
_results = {}


def pytest_runtest_logreport(report):
    m = _CRITERION.search(report.nodeid)
    if not m:
        return
    key = (int(m.group(1)), m.group(2))
    if report.when == "call" or report.outcome != "passed":
        prev = _results.get(key)
        if prev is None or prev[0] == "PASS":
            _results[key] = ("PASS" if report.outcome == "passed" else "FAIL", report.duration)


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for (n, name), (status, secs) in sorted(_results.items()):
        terminalreporter.write_line(f"criterion {n:2d} {name.replace('_', ' ')}: {status} ({secs:.2f}s)")
