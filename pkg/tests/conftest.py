from fractions import Fraction

import pytest
from hypothesis import strategies as st

from genassoc import INF, ExtRat, Interval, RangeSet, load_fixture

# small denominators keep coincidences (shared endpoints, touching intervals) frequent
finite_ext = st.builds(lambda n, d: ExtRat(Fraction(n, d)),
                       st.integers(min_value=0, max_value=40), st.sampled_from([1, 2, 3, 4, 8]))
ext_values = st.one_of(finite_ext, finite_ext, finite_ext, st.just(INF))


@st.composite
def intervals(draw):
    a, b = sorted([draw(ext_values), draw(ext_values)])
    if a == b:
        return Interval(a, a)
    return Interval(a, b, draw(st.booleans()), draw(st.booleans()))


range_sets = st.builds(RangeSet, st.lists(intervals(), max_size=5))


@pytest.fixture(scope="session")
def fixture():
    cache = {}

    def get(name):
        if name not in cache:
            cache[name] = load_fixture(name)
        return cache[name]

    return get


def Q(text):
    return ExtRat(text)


def R(text):
    from genassoc import parse_rangeset
    return parse_rangeset(text)


# acceptance bookkeeping: criterion number -> [(label, ok, detail)]
ACCEPTANCE: dict = {}


def record(criterion: int, label: str, ok: bool, detail: str = "") -> bool:
    ACCEPTANCE.setdefault(criterion, []).append((label, bool(ok), detail))
    return ok


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        checks = ACCEPTANCE[n]
        failed = [c for c in checks if not c[1]]
        status = "PASS" if not failed else "FAIL"
        tr.write_line(f"criterion {n:>2}: {status}  ({len(checks) - len(failed)}/{len(checks)} checks)")
        for label, _, detail in failed:
            tr.write_line(f"    failed: {label}" + (f"  [{detail}]" if detail else ""))
