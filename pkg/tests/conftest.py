import pytest

from griffheight.chow import PencilGeometry


@pytest.fixture
def worked_geometry():
    return PencilGeometry(N=2, d=3, deg_e=1, deg_m=2)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
