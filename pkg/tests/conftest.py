import sys
from pathlib import Path

import pytest
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from iwasawa.padic_core import PrimeContext, element  # noqa: E402

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def ctx5():
    return PrimeContext(5)


def polys(max_degree=3, bound=30, nonzero=False):
    s = st.lists(st.integers(-bound, bound), max_size=max_degree + 1).map(element)
    return s.filter(bool) if nonzero else s


def matrices(max_rows=3, max_cols=3, max_degree=2, bound=10):
    return st.integers(1, max_rows).flatmap(
        lambda n: st.integers(1, max_cols).flatmap(
            lambda m: st.lists(st.lists(polys(max_degree, bound), min_size=m, max_size=m), min_size=n, max_size=n)
        )
    )


def int_matrices(max_rows=4, max_cols=4, bound=60):
    return st.integers(1, max_rows).flatmap(
        lambda n: st.integers(1, max_cols).flatmap(
            lambda m: st.lists(st.lists(st.integers(-bound, bound), min_size=m, max_size=m), min_size=n, max_size=n)
        )
    )


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
