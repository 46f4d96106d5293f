import numpy as np
import pytest

ACCEPTANCE_LINES: list[str] = []


def loglog_slope(x, e):
    """Plain least-squares slope, kept separate from the library's fitter."""
    return float(np.polyfit(np.log(x), np.log(e), 1)[0])


@pytest.fixture
def rng():
    return np.random.default_rng(20261016)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
