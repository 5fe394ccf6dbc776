import pytest

from bihilbert.polynomials import SparsePolynomial

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)


@pytest.fixture
def xyz():
    return [SparsePolynomial.variable(i, 3) for i in range(3)]


@pytest.fixture
def matrix23():
    x = [SparsePolynomial.variable(i, 6) for i in range(6)]
    x11, x12, x13, x21, x22, x23 = x
    return x, (x11 * x22 - x12 * x21, x11 * x23 - x13 * x21, x12 * x23 - x13 * x22)
