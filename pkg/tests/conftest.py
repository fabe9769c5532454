import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from phaseimpact import Material

_ACCEPTANCE = []


@pytest.fixture
def m13():
    return Material.dimensionless(1.0, 3.0)


@pytest.fixture
def m15():
    return Material.dimensionless(1.0, 5.0)


@pytest.fixture
def criterion():
    """Record one acceptance criterion line for the terminal summary."""

    def record(name, passed, detail=""):
        _ACCEPTANCE.append((name, bool(passed), detail))
        assert passed, f"{name}: {detail}"

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, passed, detail in _ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {name}  {detail}")
