from __future__ import annotations

from pathlib import Path

import pytest

from lkts.construction import Construction

DATA = Path(__file__).parent / "data"

_acceptance: list[tuple[str, bool, str]] = []


@pytest.fixture(scope="session")
def ctx13() -> Construction:
    return Construction.from_spec(13, 2, "builtin:denniston15")


@pytest.fixture(scope="session")
def ctx7() -> Construction:
    return Construction.from_spec(7, 2, "builtin:lkts9")


@pytest.fixture(scope="session")
def ctx73() -> Construction:
    return Construction.from_spec(7, 3, "builtin:lkts9")


@pytest.fixture
def criterion(request):
    """Record one acceptance line: call with (passed, detail)."""
    name = request.node.name

    def record(passed: bool, detail: str = "") -> None:
        _acceptance.append((name, bool(passed), detail))

    return record


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name, passed, detail in _acceptance:
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {name}  {detail}")
