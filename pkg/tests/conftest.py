"""Prints one PASS/FAIL line per acceptance criterion after the run.

Tests opt in with ``@pytest.mark.criterion(n, title)``; a criterion passes
when every test carrying its number passed.
"""

from collections import defaultdict

import pytest

_titles = {}
_outcomes = defaultdict(list)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion covered by a test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    m = item.get_closest_marker("criterion")
    if m is None:
        return
    rep = outcome.get_result()
    n, title = m.args
    _titles[n] = title
    if rep.when == "call" or rep.failed:
        _outcomes[n].append(rep.passed)


def pytest_terminal_summary(terminalreporter):
    if not _titles:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_titles):
        res = _outcomes[n]
        status = "PASS" if res and all(res) else "FAIL"
        terminalreporter.write_line(f"{status} criterion {n:>2}: {_titles[n]}")
