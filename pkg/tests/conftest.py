import os
import sys

sys.path.insert(0, os.path.dirname(__file__))

import pytest  # noqa: E402

ACCEPTANCE: dict[int, tuple[str, bool, str]] = {}


@pytest.fixture
def criterion():
    """Record one acceptance line: ``criterion(n, title, ok, detail)``."""

    def record(n: int, title: str, ok: bool, detail: str = "") -> bool:
        ACCEPTANCE[n] = (title, ok, detail)
        print(f"criterion {n:2d} {'PASS' if ok else 'FAIL'}  {title}  {detail}")
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        title, ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:2d} {'PASS' if ok else 'FAIL'}  {title}  {detail}")
