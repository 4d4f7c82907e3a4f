import pytest
from hypothesis import given, settings, strategies as st

from serremaps.coeffs import L, L_power, as_coeff, cf_specialize, parse_coeff, proj_space
from serremaps.formulas import (
    CrossCheckError,
    HodgeDelignePoly,
    UnsupportedGenusError,
    cor44_identity_check,
    cor49_check,
    f_low,
    genus1_recursion,
    hodge_deligne,
    m_eps_series,
    m_pointed_series,
    pic_pointed,
    pic_polynomiality,
    pic_series,
    q_plus_series,
    specialization_suite,
    stability_check,
    sym_powers_series,
    virtual_hodge,
)
from serremaps.modulidata import InsufficientDataError
from serremaps.qseries import QSeries, qs_expD
from serremaps.symfunc import SymSeries, e_perp, h_perp, sf_exp_p1, sf_extract, sf_plethysm, z

P = parse_coeff

M11_P2 = {
    2: "L^7+2L^6+L^5-L^4-2L^3-L^2",
    3: "L^10+2L^9+L^8-2L^7-3L^6+2L^4+L^3-L^2-L",
    4: "L^13+2L^12+L^11-2L^10-3L^9+2L^7-3L^5-2L^4+L^3+2L^2+L",
    5: "L^16+2L^15+L^14-2L^13-3L^12+2L^10-3L^8-2L^7+2L^6+4L^5+2L^4-L^3-2L^2-L",
}
M20_P2 = {
    2: "L^8+L^7-L^5-L^4",
    3: "L^10+L^9-L^7-L^6-L^5-L^4+L^2+L",
    4: "L^13+2L^12+2L^11-L^10-3L^9-3L^8-L^7+2L^6+3L^5+2L^4-L^3-2L^2-L",
}


@pytest.fixture(scope="module")
def m1(a1):
    return m_eps_series(a1, 1, 2, 6)


@pytest.fixture(scope="module")
def m2(a2):
    return m_eps_series(a2, 2, 2, 4)


# ---- symmetric powers and Picard ----


def test_sym_powers_low_coefficients(a1, a2):
    s1 = sym_powers_series(a1, 1, 4)
    assert s1.coeff(1) == h_perp(1, a1)
    assert s1.coeff(0) == SymSeries.zero()
    s2 = sym_powers_series(a2, 2, 4)
    assert s2.coeff(2) == SymSeries.zero()


@pytest.mark.parametrize("d", [1, 2, 3])
def test_sym_power_degree0_is_trivial_multiplicity(a1, d):
    s = sym_powers_series(a1, 1, 3)
    assert s.part(d, 0).terms.get((), as_coeff(0)) == sf_extract(a1, d, "trivial_mult")


def test_pic_genus2_degree0(a2):
    assert pic_series(a2, 2).terms[()] == P("L^5+L^4+L^3-1")
    assert pic_pointed(a2, 2).terms[()] == P("L^5+L^4+L^3-1")


def test_pic_genus1_degree0_is_universal_curve(a1):
    # Pic^1 over M_1 is the universal curve over M_{1,1}
    assert pic_series(a1, 1).terms[()] == L
    assert pic_series(a1, 1).terms[()] == a1.terms[(1,)]


def test_pic_polynomial_for_bundled_data(a1, a2):
    assert all(pic_polynomiality(pic_series(a1, 1)).values())
    assert all(pic_polynomiality(pic_series(a2, 2)).values())


def test_sym_vs_picard_on_genuine_tables(a1, a2):
    r1, r2 = cor44_identity_check(a1, 1, 6), cor44_identity_check(a2, 2, 6)
    assert r1.ok and r2.ok and r1.cells and r2.cells


def test_sym_vs_picard_rejects_toy_table():
    # a = L p_1 with nothing above degree one is not moduli data
    a = SymSeries({(1,): L}, 3)
    rep = cor44_identity_check(a, 1, 3)
    assert not rep.ok and rep.first_failure == (0, 2)


def test_sym_vs_picard_locates_corruption(a2):
    bad = SymSeries({**a2.terms, (2, 1, 1): a2.terms[(2, 1, 1)] + 1}, a2.bound)
    rep = cor44_identity_check(bad, 2, 6)
    assert not rep.ok
    n, d = rep.first_failure
    assert n + d >= 4


# ---- quasimaps ----


@pytest.mark.parametrize("g, r", [(1, 1), (1, 2), (2, 1), (2, 2), (2, 3)])
def test_q_plus_first_coefficient(a1, a2, g, r):
    a = a1 if g == 1 else a2
    Q = q_plus_series(a, g, r, 2 * g)
    expected = h_perp(2 * g - 1, a).scale((L_power(g * (r + 1)) - 1) / (L_power(g) - 1))
    assert Q.coeff(2 * g - 1).agrees_with(expected)
    for d in range(2 * g - 1):
        assert Q.coeff(d) == SymSeries.zero()


def test_q_plus_genus1_degree1(a1):
    Q = q_plus_series(a1, 1, 2, 2)
    assert Q.part(1, 0).terms[()] == P("L*(L^2+L+1)")


def test_q_plus_detects_inconsistent_data():
    junk = SymSeries({(2,): L, (1, 1): as_coeff(1)}, 4)
    with pytest.raises(CrossCheckError):
        q_plus_series(junk, 1, 1, 3)


@pytest.mark.parametrize("g, r", [(1, 1), (1, 3), (2, 1), (2, 2)])
def test_quasimap_first_differences(a1, a2, g, r):
    rep = cor49_check(a1 if g == 1 else a2, g, r, 6)
    assert rep.ok and rep.cells


# ---- low-degree part ----


def test_f_low_genus1(a1):
    f = f_low(a1, 1, 3, 2)
    assert f.coeff(0) == a1.scale(proj_space(3))
    assert f.coeff(1) == SymSeries.zero()


def test_f_low_genus2_q1(a2):
    f = f_low(a2, 2, 2, 2)
    assert f.coeff(1) == h_perp(1, a2).scale(proj_space(2))


def test_f_low_genus2_strata_give_hyperelliptic_row(a2):
    # applying exp(-D) at q^2 in degree 0 gives Map_1(P^1, P^2) x M_2
    f = f_low(a2, 2, 2, 2)
    deg0 = lambda s: s.degree_part(0).terms.get((), as_coeff(0))
    val = deg0(f.coeff(2)) - deg0(e_perp(1, f.coeff(1))) + deg0(e_perp(2, f.coeff(0)))
    assert val == P("L^8+L^7-L^5-L^4") == P("L^5+L^4-L^2-L") * P("L^3")


def test_f_low_refuses_genus3():
    with pytest.raises(UnsupportedGenusError) as info:
        f_low(SymSeries.p(1, bound=5), 3, 1, 4)
    assert isinstance(info.value, InsufficientDataError)


# ---- mapping spaces ----


@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_m11_p2_rows(m1, d):
    assert m1.part(d, 1).terms[(1,)] == P(M11_P2[d])


@pytest.mark.parametrize("d", [2, 3, 4])
def test_m20_p2_rows(m2, d):
    assert m2.part(d, 0).terms[()] == P(M20_P2[d])


def test_degree_zero_maps_are_constant(a1, m1):
    assert m1.coeff(0).agrees_with(a1.scale(proj_space(2)))


def test_genus1_degree1_is_empty(m1):
    for n in range(0, 6):
        assert m1.part(1, n) == SymSeries.zero()


def test_expD_of_maps_is_f_plus_quasimaps(a1, a2, m1, m2):
    for a, g, m in ((a1, 1, m1), (a2, 2, m2)):
        target = f_low(a, g, 2, m.d_max) + q_plus_series(a, g, 2, m.d_max)
        assert qs_expD(m).agrees_with(target)


def test_pointed_series(m1, m2):
    p1, p2 = m_pointed_series(m1), m_pointed_series(m2)
    for d in range(2, 5):
        assert p1.part(d, 1) == m1.part(d, 1)
        assert p2.part(d, 0) == m2.part(d, 0)
    # round trip with Exp
    for d in range(0, 4):
        c = p1.coeff(d)
        back = sf_plethysm(c, sf_exp_p1(int(c.bound)))
        assert back.agrees_with(m1.coeff(d))


def test_outputs_are_integral(m1, m2):
    for m in (m_pointed_series(m1), m_pointed_series(m2)):
        for c in m.coeffs:
            for lam, v in c.terms.items():
                zc = v * z(lam)
                assert zc.is_polynomial() and zc.num.is_integral()


# ---- genus-one closed form and recursion ----


def test_genus1_closed_form_example(a1):
    forms = genus1_recursion(1, 2, 2, a1)
    expected = e_perp(1, a1.degree_part(2)).scale(proj_space(2) * P("L^3-L"))
    assert forms["closed"] == expected == forms["recursive"]
    assert forms["closed"].terms[(1,)] == P(M11_P2[2])


def test_recursion_reproduces_m11_rows(a1):
    for d in range(2, 6):
        assert genus1_recursion(1, d, 2, a1)["recursive"].terms[(1,)] == P(M11_P2[d])


def test_closed_form_degree1_empty_sum_matches_pipeline(a1, m1):
    for n in range(0, 5):
        assert genus1_recursion(n, 1, 2, a1)["closed"] == SymSeries.zero() == m1.part(1, n)


@pytest.mark.parametrize("r", [1, 2])
def test_three_routes_agree(a1, r):
    m = m_eps_series(a1, 1, r, 8)
    for d in range(0, 9):
        for n in range(0, 9 - d):
            if n + d == 0:
                continue
            forms = genus1_recursion(n, d, r, a1)
            assert forms["closed"] == forms["recursive"] == m.part(d, n), (n, d)


def test_recursion_needs_data():
    from serremaps.symfunc import ValidityError
    with pytest.raises(ValidityError):
        genus1_recursion(1, 4, 1, SymSeries.p(1, bound=3))
    with pytest.raises(ValueError):
        genus1_recursion(0, 0, 1, SymSeries.p(1, bound=3))


# ---- Hodge-Deligne and specializations ----


def test_hodge_deligne_examples():
    hd = hodge_deligne(P(M11_P2[2]))
    assert isinstance(hd, HodgeDelignePoly)
    assert hd.terms == {(7, 7): 1, (6, 6): 2, (5, 5): 1, (4, 4): -1, (3, 3): -2, (2, 2): -1}
    assert hodge_deligne(as_coeff(1)).terms == {(0, 0): 1}
    assert virtual_hodge(P(M11_P2[3]), 3, 4) == 0
    assert virtual_hodge(P(M11_P2[3]), 9, 9) == 2


def test_hodge_deligne_equivariant(m1):
    hd = hodge_deligne(m1.part(2, 1))
    assert hd.terms[(7, 7)] == SymSeries.p(1)


def test_hodge_deligne_refuses_cusp_symbols():
    from serremaps.coeffs import SpecializationError
    with pytest.raises(SpecializationError):
        hodge_deligne(P("S12+1"))


@given(st.integers(0, 10), st.integers(0, 10))
@settings(max_examples=30)
def test_only_diagonal_hodge_numbers(p, q):
    v = virtual_hodge(P(M20_P2[4]), p, q)
    assert p == q or v == 0


def test_stability_m11_rows():
    m = QSeries([SymSeries.zero()] * 4 + [SymSeries.p(1, coeff=P(M11_P2[4])), SymSeries.p(1, coeff=P(M11_P2[5]))])
    rep = stability_check(1, 2, 1, 4, m)
    assert rep["improved_bound"] == 20 and rep["proven_bound"] == 22
    assert rep["holds_above_bound"]
    # agreement for L-degree >= 7 after the L^3 shift, first disagreement at L^6
    assert rep["empirical_bound"] == 12


def test_stability_reports_low_weight_disagreement_without_failing():
    m = QSeries([SymSeries.zero(), SymSeries.p(1, coeff=P("L^3+1")), SymSeries.p(1, coeff=P("L^6+5"))])
    rep = stability_check(1, 2, 1, 1, m)
    assert rep["holds_above_bound"] and rep["empirical_bound"] == 6


@pytest.mark.parametrize("n", [0, 1, 2])
def test_stability_pipeline_r1(a1, n):
    m = m_pointed_series(m_eps_series(a1, 1, 1, 7 - n))
    for d in range(0, 7 - n):
        assert stability_check(1, 1, n, d, m)["holds_above_bound"]


def test_specialization_examples(m1, m2):
    for d, text in M11_P2.items():
        assert cf_specialize(P(text), 1) == 0 and cf_specialize(P(text), 0) == 0
    r1 = specialization_suite(m1, 1)
    r2 = specialization_suite(m2, 2)
    assert r1["ok"] and r2["ok"] and r2["observations"] == []
    # degree zero is outside the vanishing statement
    assert not r2["L=1"][(0, 0)]
    assert cf_specialize(m2.part(0, 0).terms[()], 1) == 3 * 1
