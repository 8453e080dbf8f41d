from fractions import Fraction

import pytest
from hypothesis import strategies as st

from primeprod.qseries import RationalSeries

_criteria = []


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, text): an acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _criteria.append((marker.args[0], marker.args[1], report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number, text, outcome in sorted(_criteria, key=lambda c: c[0]):
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"criterion {number:>2}  {status}  {text}")


def small_fractions(bound=5, max_denominator=6):
    return st.fractions(min_value=-bound, max_value=bound, max_denominator=max_denominator)


@st.composite
def unit_series(draw, min_order=1, max_order=12):
    """Random series with constant term 1."""
    n = draw(st.integers(min_order, max_order))
    tail = draw(st.lists(small_fractions(), min_size=n, max_size=n))
    return RationalSeries.of([Fraction(1)] + tail)


@st.composite
def series(draw, min_order=0, max_order=12):
    n = draw(st.integers(min_order, max_order))
    return RationalSeries.of(draw(st.lists(small_fractions(), min_size=n + 1, max_size=n + 1)))
