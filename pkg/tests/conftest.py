from __future__ import annotations

import pytest

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance():
    """Record one pass/fail line for an acceptance criterion."""

    def record(number: int, ok: bool, seconds: float, limit: float, detail: str = "") -> None:
        status = "PASS" if ok else "FAIL"
        line = f"criterion {number:2d}: {status} ({seconds:.1f} s, limit {limit:g} s){' ' + detail if detail else ''}"
        ACCEPTANCE_LINES.append(line)
        print(line)

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
