"""Per-criterion PASS/FAIL summary for the acceptance tests."""

import pytest

_results: dict[str, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(tag, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    tag, title = marker.args
    if report.when == "call" or report.failed:
        status = "PASS" if report.passed else "FAIL"
        if _results.get(tag, ("PASS",))[0] != "FAIL":
            _results[tag] = (status, title)


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for tag in sorted(_results, key=lambda t: int(t[2:])):
        status, title = _results[tag]
        terminalreporter.write_line(f"{status} {tag}: {title}")
