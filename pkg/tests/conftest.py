from __future__ import annotations

import pytest

from ballspace.bundled import load_bundled


@pytest.fixture(scope="session")
def diamond():
    return load_bundled("diamond")


@pytest.fixture(scope="session")
def bent():
    return load_bundled("bent_line")


@pytest.fixture(scope="session")
def chain():
    return load_bundled("chain")


@pytest.fixture(scope="session")
def square():
    return load_bundled("square")


ACCEPTANCE: dict[str, tuple[bool, str]] = {}


def record(criterion: str, ok: bool, detail: str) -> None:
    """Log one acceptance line; printed together at the end of the run."""
    ACCEPTANCE[criterion] = (ok, detail)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE, key=lambda k: (int(k.split("(")[0].split("-")[0]), k)):
        ok, detail = ACCEPTANCE[key]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {key}: {detail}")
