import os
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

# derandomized so that repeated runs see the same examples
settings.register_profile("default", derandomize=True, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("explore", deadline=None, max_examples=5000)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

ACCEPTANCE_LINES = []

EXAMPLES = Path(__file__).resolve().parent.parent / "examples_data"


@pytest.fixture
def examples_dir():
    return EXAMPLES


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line[1])
