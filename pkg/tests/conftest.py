import pytest

_criteria: dict[int, list[tuple[str, str, str]]] = {}


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run the n = 5 exhaustive sweeps")


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, text): an acceptance criterion")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, text = marker.args
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed") or (
        report.when == "teardown" and report.outcome == "failed"
    ):
        status = {"passed": "PASS", "failed": "FAIL", "skipped": "SKIP"}[report.outcome]
        _criteria.setdefault(number, []).append((status, text, item.name))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        runs = _criteria[number]
        statuses = [s for s, _, _ in runs]
        if "FAIL" in statuses:
            status = "FAIL"
        elif "PASS" in statuses:
            status = "PASS"
        else:
            status = "SKIP"
        ran = [r for r in runs if r[0] != "SKIP"]
        text = (ran or runs)[0][1]
        line = f"{status} criterion {number}: {text}"
        if len(runs) > 1:
            line += f" ({statuses.count('PASS')}/{len(runs)} checks passed"
            skipped = [name for s, _, name in runs if s == "SKIP"]
            line += f", skipped: {', '.join(skipped)})" if skipped else ")"
        terminalreporter.write_line(line)
