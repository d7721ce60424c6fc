from __future__ import annotations

import os
from contextlib import contextmanager

import pytest

ACCEPTANCE: list[tuple[int, str, str, str]] = []


def pytest_collection_modifyitems(config, items):
    if os.environ.get("WEYLPI_RUN_A4"):
        return
    skip = pytest.mark.skip(reason="set WEYLPI_RUN_A4=1 to run the A4 suite")
    for item in items:
        if "a4" in item.keywords:
            item.add_marker(skip)


@pytest.fixture
def criterion():
    """Context manager recording a PASS/FAIL line for an acceptance criterion.

    The body may store a short summary in the yielded dict under "detail".
    """
    @contextmanager
    def run(number: int, part: str = ""):
        info: dict[str, str] = {}
        ok = False
        try:
            yield info
            ok = True
        finally:
            ACCEPTANCE.append((number, part, "PASS" if ok else "FAIL", info.get("detail", "")))
    return run


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, part, status, detail in sorted(ACCEPTANCE, key=lambda x: (x[0], x[1])):
        name = f"{number}" + (f" [{part}]" if part else "")
        line = f"criterion {name}: {status}"
        if detail:
            line += f"  ({detail})"
        terminalreporter.write_line(line)
