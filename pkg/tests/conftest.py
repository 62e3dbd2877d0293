"""Acceptance bookkeeping: one summary line per numbered criterion."""

from collections import defaultdict

import pytest

_outcomes = defaultdict(list)   # criterion -> [(nodeid, passed)]
_details = defaultdict(list)    # criterion -> [str]
_titles = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion number")


@pytest.fixture
def note(request):
    """Attach a measured value to the current test's criterion line."""
    mark = request.node.get_closest_marker("criterion")

    def _note(text):
        if mark is not None:
            _details[mark.args[0]].append(text)
    return _note


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        n = mark.args[0]
        _titles[n] = mark.args[1] if len(mark.args) > 1 else ""
        _outcomes[n].append((item.nodeid, rep.passed))


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(_outcomes):
        runs = _outcomes[n]
        ok = all(p for _, p in runs)
        passed = sum(p for _, p in runs)
        detail = "; ".join(_details.get(n, []))
        line = f"[{'PASS' if ok else 'FAIL'}] C{n:<2d} {_titles[n]} ({passed}/{len(runs)})"
        tr.write_line(f"{line}  {detail}" if detail else line)
