from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from slpwordbreak.slp import Slp, parse_slp  # noqa: E402

ABBAB_TEXT = """\
# X1 -> a, X2 -> b, X3 -> X1 X2, X4 -> X3 X2, X5 -> X4 X3
A 256
R 0 T 97
R 1 T 98
R 2 N 0 1
R 3 N 2 1
R 4 N 3 2
S 4
"""

A, B = 97, 98


@pytest.fixture
def abbab() -> Slp:
    """The five-rule grammar for "abbab"; rule id k is X(k+1)."""
    return parse_slp(ABBAB_TEXT)


def word(s: str) -> tuple[int, ...]:
    return tuple(s.encode())


_criteria: dict[int, tuple[str, str]] = {}


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    marker = _markers.get(report.nodeid)
    if marker is not None:
        number, title = marker
        if _criteria.get(number, ("", ""))[1] != "FAILED":
            _criteria[number] = (title, report.outcome.upper())


_markers: dict[str, tuple[int, str]] = {}


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark is not None:
            _markers[item.nodeid] = (mark.args[0], mark.args[1])


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        title, outcome = _criteria[number]
        status = "PASS" if outcome == "PASSED" else "FAIL"
        terminalreporter.write_line(f"criterion {number}: {status}  {title}")
