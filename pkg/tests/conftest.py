import os
import sys
import time

import pytest
from hypothesis import settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("fixed", derandomize=True, deadline=None, max_examples=60)
settings.load_profile("fixed")

# lines recorded by the acceptance suite, printed at the end of the run
ACCEPTANCE_LINES: list[str] = []
SEARCH_SECONDS: list[float] = []


@pytest.fixture(scope="session")
def mu0_default_search():
    """One run of the planar lattice search with its default configuration."""
    from frobcover.mu0 import mu0_search_2d

    t0 = time.monotonic()
    r = mu0_search_2d()
    SEARCH_SECONDS.append(time.monotonic() - t0)
    return r


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
