"""Prints one PASS/FAIL line per acceptance criterion at the end of the run."""

import pytest


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion a test checks")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    marker = item.get_closest_marker("criterion")
    if marker is not None:
        outcome.get_result().criterion = marker.args


def pytest_terminal_summary(terminalreporter):
    results = {}
    for reports in terminalreporter.stats.values():
        for rep in reports:
            args = getattr(rep, "criterion", None)
            if args is None:
                continue
            number, title = args
            ok, _, detail = results.get(number, (True, title, ""))
            ok = ok and not rep.failed and not rep.skipped
            detail = dict(rep.user_properties).get("detail", detail)
            results[number] = (ok, title, detail)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        ok, title, detail = results[number]
        line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {title}"
        terminalreporter.write_line(f"{line}  ({detail})" if detail else line)
