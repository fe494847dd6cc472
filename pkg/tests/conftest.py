import random

import pytest
from hypothesis import settings, strategies as st

from periodic_algebra import GF, QQ, PeriodicAlgebra, StructureMatrix

settings.register_profile("ci", max_examples=60, deadline=None, derandomize=True)
settings.load_profile("ci")

FIELDS = [QQ, GF(2), GF(3), GF(5)]


@st.composite
def algebras(draw, fields=tuple(FIELDS), max_n=4, t_range=6):
    field = draw(st.sampled_from(fields))
    n = draw(st.integers(1, max_n))
    if field.is_finite:
        entry = st.integers(0, field.p - 1)
    else:
        entry = st.one_of(st.just(0), st.fractions(min_value=-3, max_value=3, max_denominator=3))
    rows = draw(st.lists(st.lists(entry, min_size=n, max_size=n), min_size=n, max_size=n))
    t = draw(st.integers(-t_range, t_range))
    return PeriodicAlgebra(field, t, StructureMatrix.from_rows(field, rows))


@pytest.fixture
def rng():
    return random.Random(20240601)


_ACCEPTANCE = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if item.module.__name__.endswith("test_acceptance") and (rep.when == "call" or rep.failed):
        doc = (item.function.__doc__ or item.name).strip().splitlines()[0]
        _ACCEPTANCE.append((item.name, rep.outcome, doc))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome, doc in _ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'}  {name}: {doc}")
