from collections import defaultdict

import pytest

from psosc import OscillatorParams

_CRITERIA = defaultdict(list)


@pytest.fixture
def unit():
    return OscillatorParams()


@pytest.fixture
def odd():
    """Non-unit constants, to catch unit mistakes."""
    return OscillatorParams(hbar=0.7, mass=1.3, omega=2.1)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion the test belongs to")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    for key, value in report.user_properties:
        if key == "criterion":
            _CRITERIA[value].append((report.nodeid.split("::")[-1], report.passed))


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark is not None:
            item.user_properties.append(("criterion", mark.args[0]))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for cid in sorted(_CRITERIA, key=int):
        results = _CRITERIA[cid]
        ok = all(passed for _, passed in results)
        failed = [name for name, passed in results if not passed]
        tail = f" (failed: {', '.join(failed)})" if failed else ""
        terminalreporter.write_line(f"criterion {cid:>2}: {'PASS' if ok else 'FAIL'}{tail}")
