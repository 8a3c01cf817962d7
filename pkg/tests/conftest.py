import pytest

from _instances import book, gadget, filled_triangle, k5_edges

_acceptance = []


@pytest.fixture
def gadget_complex():
    return gadget()


@pytest.fixture
def k5():
    return k5_edges()


@pytest.fixture
def triangle():
    return filled_triangle()


@pytest.fixture
def book4():
    return book(4)


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py" in report.nodeid:
        _acceptance.append((report.nodeid.split("::")[-1], report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _acceptance:
        terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'}  {name}")
