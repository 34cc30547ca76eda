from __future__ import annotations

import pytest

from p2pcore.calibrate import CALIBRATED
from p2pcore.netgen import generate

_acceptance: list[tuple[str, str]] = []


@pytest.fixture(scope="session")
def calibrated_network():
    return generate(CALIBRATED)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and not report.passed):
        _acceptance.append((marker.args[0], "PASS" if report.passed else "FAIL"))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name, status in _acceptance:
        terminalreporter.write_line(f"{status}  {name}")
