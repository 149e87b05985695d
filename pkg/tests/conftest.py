from __future__ import annotations

import pytest

from localplp.core import PlpInstance
from localplp.exact import Poly, rat

EPS = rat("1/10")


def d(*coeffs) -> Poly:
    return Poly(coeffs)


def toy_instance(eps=EPS) -> PlpInstance:
    """Two variables; feasible for d <= 0 and d > eps, empty on (0, eps)."""
    return PlpInstance.from_rows([
        ([-1, 1], 0),
        ([1, 1], 0),
        ([0, -1], eps - 1),
        ([0, -1], d(0, eps, -1)),
        ([0, 1], d(-1, 1)),
    ])


@pytest.fixture
def toy() -> PlpInstance:
    return toy_instance()


# --- acceptance report -------------------------------------------------------------

ACCEPTANCE: dict[int, tuple[str, str]] = {}


def record(number: int, title: str, ok: bool, detail: str = "") -> None:
    """Store and print one acceptance line; the terminal summary repeats them in order."""
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title}" + (f" ({detail})" if detail else "")
    ACCEPTANCE[number] = ("PASS" if ok else "FAIL", line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[n][1])
