import pytest

from doubleplane.normalform import BMatrix, build_curve_ideal
from doubleplane.polycore import ring_R, ring_S


@pytest.fixture(scope="session")
def S():
    return ring_S()


@pytest.fixture(scope="session")
def R():
    return ring_R()


def make_e1(f_col=("t", "y"), h="1"):
    S = ring_S()
    P = S.parse
    return BMatrix.create([[P("y"), P("z")]], [P("t"), P("-y")], [P(f) for f in f_col], P(h), S)


@pytest.fixture(scope="session")
def e1():
    return make_e1()


@pytest.fixture(scope="session")
def e1_curve(e1):
    return build_curve_ideal(e1)


# one line per acceptance criterion, printed after the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda l: int(l.split()[1])):
            terminalreporter.write_line(line)
