import pytest

from subcyc.monomials import parse_ideal


@pytest.fixture
def two_comp():
    """(x1*x2, x1*x3): a hyperplane and a line through the origin in 3-space."""
    return parse_ideal("x1*x2, x1*x3", 3)


@pytest.fixture
def three_axes():
    return parse_ideal("x1*x2, x2*x3, x1*x3", 3)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
