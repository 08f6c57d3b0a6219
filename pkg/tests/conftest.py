from importlib import resources
from pathlib import Path

import pytest

FIXTURE_NAMES = (
    "example1",
    "geodesic_circular_helix",
    "geodesic_generalized_helix",
    "geodesic_salkowski",
    "geodesic_anti_salkowski",
)

# Filled by tests/test_acceptance.py; printed once at the end of the run.
ACCEPTANCE_LINES = []


def fixture_path(name) -> Path:
    return Path(str(resources.files("galcurves").joinpath("fixtures", f"{name}.json")))


@pytest.fixture
def fixture_file():
    return fixture_path


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
