import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def criterion():
    """Record a one-line pass/fail verdict for an acceptance criterion."""

    def record(number, title, ok, detail=""):
        status = "PASS" if ok else "FAIL"
        ACCEPTANCE_LINES.append(f"[{status}] criterion {number:>2}: {title} {detail}".rstrip())
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
