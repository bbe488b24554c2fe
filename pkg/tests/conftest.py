import pathlib

import pytest

from toricqample.fan import (
    blowup_projective_space,
    class_lattice,
    product_of_lines,
    projective_space,
    weighted_projective_plane,
)
from toricqample.nerve import obstruction_table

FIXTURES = pathlib.Path(__file__).parent / "fixtures"
GOLDEN = pathlib.Path(__file__).parent / "golden"


def he_basis(n):
    """Divisors E_{n+1} (class H) and E_{n+2} (class E) on Bl_pt P^n."""
    h = [0] * (n + 2)
    e = [0] * (n + 2)
    h[n] = 1
    e[n + 1] = 1
    return [h, e]


class Setup:
    """A fan with its obstruction table and class lattice."""

    def __init__(self, fan, basis=None):
        self.fan = fan
        self.table = obstruction_table(fan)
        self.lattice = class_lattice(fan, basis)


@pytest.fixture(scope="session")
def bl2():
    return Setup(blowup_projective_space(2), he_basis(2))


@pytest.fixture(scope="session")
def bl3():
    return Setup(blowup_projective_space(3), he_basis(3))


@pytest.fixture(scope="session")
def p2():
    return Setup(projective_space(2))


@pytest.fixture(scope="session")
def p1p1():
    return Setup(product_of_lines())


@pytest.fixture(scope="session")
def p112():
    return Setup(weighted_projective_plane(2))


# -- acceptance reporting ------------------------------------------------------

ACCEPTANCE_LINES = []


def record_acceptance(number, title, ok, detail=""):
    """Print and remember one acceptance result line; fail the test if not ok."""
    line = f"[acceptance {number}] {'PASS' if ok else 'FAIL'}: {title}" + (f" ({detail})" if detail else "")
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert ok, line


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
