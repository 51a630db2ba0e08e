from __future__ import annotations

import pytest

_acceptance_lines: list[str] = []


@pytest.fixture
def acceptance_report():
    """Collects one summary line per acceptance criterion for the terminal summary."""
    return _acceptance_lines


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)
