"""Shared pytest hooks: prints one pass/fail line per acceptance criterion."""

_labels = {}
_outcomes = {}


def pytest_collection_modifyitems(items):
    for item in items:
        module = getattr(item, "module", None)
        if module is not None and module.__name__ == "test_acceptance":
            doc = (item.function.__doc__ or item.name).strip().splitlines()[0]
            _labels[item.nodeid] = doc


def pytest_runtest_logreport(report):
    if report.nodeid in _labels and report.when == "call":
        _outcomes[report.nodeid] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _labels:
        return
    terminalreporter.section("acceptance criteria")
    for nodeid, label in _labels.items():
        outcome = _outcomes.get(nodeid, "not run")
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{status}  {label}")
