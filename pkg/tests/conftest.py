import sys

import pytest

from toricmor.fan import fan_f1, fan_p1, fan_p1xp1


@pytest.fixture
def p1():
    return fan_p1()


@pytest.fixture
def p1xp1():
    return fan_p1xp1()


@pytest.fixture
def f1():
    return fan_f1()


def cone_index(fan, one_based):
    """Position in ``fan.max_cones`` of the cone given by 1-based rays."""
    target = tuple(sorted(i - 1 for i in one_based))
    return fan.max_cones.index(target)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(k): acceptance criterion number")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    setattr(item, "rep_" + rep.when, rep)


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in module.report_lines():
        terminalreporter.write_line(line)
