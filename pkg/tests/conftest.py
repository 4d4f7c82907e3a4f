from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from serremaps.coeffs import CoeffFrac, MPoly
from serremaps.modulidata import a_eps, bundled_table
from serremaps.symfunc import SymSeries, partitions_of

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

small_ints = st.integers(-3, 3)


@st.composite
def L_polys(draw, max_deg=3):
    coeffs = draw(st.lists(small_ints, min_size=1, max_size=max_deg + 1))
    return MPoly.from_L_coeffs([Fraction(c) for c in coeffs])


@st.composite
def coeff_fracs(draw, allow_den=True):
    num = draw(L_polys())
    if allow_den and draw(st.booleans()):
        den = draw(L_polys(max_deg=2))
        if den:
            return CoeffFrac(num, den)
    return CoeffFrac(num)


@st.composite
def partitions(draw, max_n=8, min_n=0):
    n = draw(st.integers(min_n, max_n))
    return draw(st.sampled_from(partitions_of(n)))


@st.composite
def sym_series(draw, max_n=6, min_n=0, max_terms=4, homogeneous=None, rational=False):
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        if homogeneous is not None:
            lam = draw(st.sampled_from(partitions_of(homogeneous)))
        else:
            lam = draw(partitions(max_n, min_n))
        c = CoeffFrac.const(draw(small_ints)) if rational else draw(coeff_fracs(allow_den=False))
        terms[lam] = terms.get(lam, CoeffFrac.const(0)) + c
    return SymSeries(terms)


@pytest.fixture(scope="session")
def a1():
    """a_1^eps through degree 8 from the bundled genus-1 table."""
    return a_eps(bundled_table("genus1.mgn"), 8)


@pytest.fixture(scope="session")
def a2():
    """a_2^eps through degree 7 from the bundled genus-2 table."""
    return a_eps(bundled_table("genus2.mgn"), 7)


# ---- acceptance report ----

_ACCEPTANCE: dict = {}


@pytest.fixture
def criterion():
    """Record ``(number, ok, detail)``; the summary prints one line per criterion."""

    def record(number, ok, detail=""):
        _ACCEPTANCE[number] = (bool(ok), detail)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        ok, detail = _ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}")
