from fractions import Fraction

import pytest
from hypothesis import settings, strategies as st

from radcomp.poly import MultiPoly, UniPoly

settings.register_profile("default", deadline=None, max_examples=40)
settings.load_profile("default")


def rationals(max_num=12, max_den=6):
    return st.builds(
        Fraction,
        st.integers(-max_num, max_num),
        st.integers(1, max_den),
    )


def unipolys(max_degree=4):
    return st.lists(rationals(), min_size=0, max_size=max_degree + 1).map(UniPoly)


def multipolys(nvars=2, max_exp=3, max_terms=4):
    key = st.tuples(*[st.integers(0, max_exp)] * nvars)
    return st.dictionaries(key, rationals(), max_size=max_terms).map(lambda d: MultiPoly(nvars, d))


@pytest.fixture
def s():
    return UniPoly.s()


# ---------------------------------------------------------------------------
# acceptance bookkeeping: each criterion records its cases, and the terminal
# summary prints one PASS/FAIL line per criterion

ACCEPTANCE: dict[int, list[tuple[str, bool]]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        cases = ACCEPTANCE[number]
        ok = all(passed for _, passed in cases)
        failed = [name for name, passed in cases if not passed]
        detail = f"{len(cases)} case(s)" + (f", failing: {', '.join(failed)}" if failed else "")
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'} ({detail})")
