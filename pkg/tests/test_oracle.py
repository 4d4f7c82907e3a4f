"""The independent oracles agree with hand values and refuse what they cannot represent."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conftest import partitions, sym_series
from serremaps.coeffs import L, as_coeff
from serremaps.oracle import (
    IDENTITIES,
    OracleRefusal,
    expD_oracle,
    identity_suite,
    plethysm_oracle,
    random_symseries,
    schur_jt_oracle,
    skew_oracle,
)
from serremaps.qseries import QSeries, qs_expD
from serremaps.symfunc import SymSeries, basis_to_p, sf_exp_p1, sf_log_p1, sf_plethysm, sf_skew

half = as_coeff(Fraction(1, 2))
third = as_coeff(Fraction(1, 3))
p = SymSeries.p


def test_h2_of_p2():
    h2 = basis_to_p("h", (2,))
    expected = SymSeries({(2, 2): half, (4,): half})
    assert plethysm_oracle(h2, p(2), 4) == expected == sf_plethysm(h2, p(2))


def test_anything_of_p1_is_itself():
    f = SymSeries({(2, 1): L, (3,): as_coeff(2), (1,): as_coeff(-1)})
    assert plethysm_oracle(f, p(1), 3) == f


def test_exp_log_through_oracle():
    # Log(p1) is rational, so the oracle can compose Exp o Log through degree N
    N = 3
    log = SymSeries(dict(sf_log_p1(N).terms))
    exp = SymSeries({k: v for k, v in sf_exp_p1(N).terms.items() if k})
    out = plethysm_oracle(exp, log, N * N)
    assert {k: v for k, v in out.terms.items() if sum(k) <= N} == {(1,): as_coeff(1)}


@pytest.mark.parametrize("lam, expected", [
    ((2, 1), {(1, 1, 1): third, (3,): -third}),
    ((1, 1), {(1, 1): half, (2,): -half}),
    ((), {(): as_coeff(1)}),
])
def test_jacobi_trudi_examples(lam, expected):
    assert schur_jt_oracle(lam) == SymSeries(expected)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_jacobi_trudi_one_row_is_h(n):
    assert schur_jt_oracle((n,)) == basis_to_p("h", (n,))


@given(partitions(max_n=7))
@settings(max_examples=40)
def test_jacobi_trudi_matches_mn(lam):
    assert schur_jt_oracle(lam) == basis_to_p("s", lam)


def test_expD_example():
    F = QSeries([p(1), SymSeries.zero()])
    assert list(expD_oracle(F, 1).coeffs) == [p(1), SymSeries({(): as_coeff(1)})]
    G = QSeries([basis_to_p("h", (2,)), SymSeries.zero(), SymSeries.zero()])
    out = expD_oracle(G, 2)
    assert out == qs_expD(G)
    assert out.coeffs[1] == p(1) and out.coeffs[2] == SymSeries({(): as_coeff(1)})


@given(sym_series(max_n=4), sym_series(max_n=6))
@settings(max_examples=40)
def test_skew_matches_adjointness(f, g):
    assert sf_skew(f, g) == skew_oracle(f, g)


def test_refusals():
    with pytest.raises(OracleRefusal):
        plethysm_oracle(p(2), SymSeries.p(1, coeff=L), 2)
    with pytest.raises(OracleRefusal):
        plethysm_oracle(p(2), p(2), 3)
    with pytest.raises(OracleRefusal):
        plethysm_oracle(p(1), SymSeries({(): as_coeff(1)}) + p(1), 2)
    with pytest.raises(OracleRefusal):
        plethysm_oracle(p(1, bound=3), p(1), 2)
    with pytest.raises(OracleRefusal):
        expD_oracle(QSeries([basis_to_p("h", (3,))]), 2)
    with pytest.raises(OracleRefusal):
        skew_oracle(p(1, bound=2), p(2))


def test_random_generators_are_seeded():
    a = random_symseries(random.Random(7), 5, terms=4)
    b = random_symseries(random.Random(7), 5, terms=4)
    assert a == b


def test_identity_suite_small():
    res = identity_suite(count=10, seed=3)
    assert [r["name"] for r in res] == list(IDENTITIES)
    assert all(r["ok"] and r["instances"] == 10 for r in res)
