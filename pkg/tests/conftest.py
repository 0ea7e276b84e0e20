import pytest
from hypothesis import strategies as st

from coverlife import CoverageMatrix

ACCEPTANCE_LINES = []


def record_criterion(number, name, passed, detail=""):
    ACCEPTANCE_LINES.append(f"[{'PASS' if passed else 'FAIL'}] AC{number} {name}: {detail}")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split("AC")[1].split()[0])):
            terminalreporter.write_line(line)


@pytest.fixture
def triangle():
    # s0:{t0,t1}, s1:{t1,t2}, s2:{t0,t2}
    return CoverageMatrix.from_rows([{0, 1}, {1, 2}, {0, 2}], 3)


@st.composite
def coverage_matrices(draw, max_n=12, max_m=8):
    """Random feasible matrices: each target gets at least one coverer."""
    n = draw(st.integers(1, max_n))
    m = draw(st.integers(1, max_m))
    rows = [set() for _ in range(n)]
    for j in range(m):
        first = draw(st.integers(0, n - 1))
        rows[first].add(j)
        extra = draw(st.lists(st.integers(0, n - 1), max_size=3))
        for i in extra:
            rows[i].add(j)
    return CoverageMatrix.from_rows(rows, m)


@st.composite
def batteries(draw, n):
    return draw(st.lists(st.floats(0.05, 1.0), min_size=n, max_size=n))
