import numpy as np
import pytest

from genodiv.core import Landscape, MeasureSpec

_criteria = []


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    param = report.nodeid.partition("[")[2].rstrip("]")
    for name, args in getattr(report, "criterion_marks", ()):
        title = f"{args[1]} [{param}]" if param else args[1]
        _criteria.append((args[0], title, report.outcome, report.duration))


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    rep.criterion_marks = [(m.name, m.args) for m in item.iter_markers("criterion")]


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, outcome, duration in sorted(_criteria, key=lambda c: str(c[0])):
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"[{status}] criterion {number}: {title} ({duration:.2f}s)")


@pytest.fixture
def square():
    return Landscape.cube(-1.0, 1.0, 2)


@pytest.fixture
def unit_square():
    return Landscape.cube(0.0, 1.0, 2)


@pytest.fixture
def rng():
    return np.random.default_rng(20121)


ALL_SPECS = [MeasureSpec("dpw"), MeasureSpec("gfs", 100), MeasureSpec("dl"), MeasureSpec("dmst")]
