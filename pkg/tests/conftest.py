import pytest

from aidc_dac.thermo import default_surface
from helpers import two_by_two_rows, write_scenario


@pytest.fixture
def two_by_two(tmp_path):
    """Scenario files (integrated and standalone) for the 2-state x 2-county fixture."""
    servers, states, counties, climate = two_by_two_rows()
    return {mode: write_scenario(tmp_path, servers=servers, states=states, counties=counties,
                                 climate=climate, mode=mode, extra="pue = 1.25")
            for mode in ("integrated", "standalone")}


@pytest.fixture
def surface():
    return default_surface()


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import VERDICTS
    except ImportError:
        return
    if VERDICTS:
        terminalreporter.section("acceptance criteria")
        for number in sorted(VERDICTS):
            terminalreporter.write_line(VERDICTS[number])
