from __future__ import annotations

import sys
from functools import lru_cache
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from gamma4.engine import build_model  # noqa: E402
from reference_quotient import Reference  # noqa: E402


@lru_cache(maxsize=None)
def cached_model(n: int):
    return build_model(n)


@lru_cache(maxsize=None)
def cached_reference(n: int):
    return Reference(n).build()


@pytest.fixture(scope="session")
def model5():
    return cached_model(5)


@pytest.fixture(scope="session")
def model6():
    return cached_model(6)


@pytest.fixture(scope="session")
def model7():
    return cached_model(7)


@pytest.fixture(scope="session")
def model8():
    return cached_model(8)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
