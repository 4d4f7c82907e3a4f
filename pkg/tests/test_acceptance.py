"""Acceptance criteria 1-8, one test each.

Run with ``pytest tests/test_acceptance.py``; the terminal summary prints one
PASS/FAIL line per criterion. A genus-3 MGN table (n <= 5) can be supplied
through ``SERREMAPS_GENUS3_TABLE`` for the genus-3 half of criterion 5.
"""

import os
import time

import pytest

from serremaps import cli
from serremaps.coeffs import cf_specialize, format_coeff, parse_coeff
from serremaps.formulas import (
    CrossCheckError,
    cor44_identity_check,
    cor49_check,
    f_low,
    genus1_recursion,
    m_eps_series,
    m_pointed_series,
    pic_series,
    q_plus_series,
    specialization_suite,
    stability_check,
)
from serremaps.modulidata import AgTable, a_eps, bundled_table, load_table
from serremaps.oracle import IDENTITIES, identity_suite
from serremaps.qseries import qs_expD
from serremaps.symfunc import SymSeries

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
PIC0 = {2: "L^5+L^4+L^3-1", 3: "L^9+2L^8+3L^7+L^6+L^3+2L^2"}
GENUS3_ENV = "SERREMAPS_GENUS3_TABLE"


def genus_table(g, n_max):
    """The bundled table cut down to ``n <= n_max``."""
    t = bundled_table(f"genus{g}.mgn")
    return AgTable(t.genus, {n: e for n, e in t.entries.items() if n <= n_max}, t.provenance, t.content_hash)


def test_criterion_1_identity_suite(criterion):
    t = time.perf_counter()
    results = identity_suite(count=100, seed=2024)
    elapsed = time.perf_counter() - t
    bad = [r["name"] for r in results if not r["ok"]]
    ok = len(results) == len(IDENTITIES) >= 7 and not bad and elapsed < 60
    criterion(1, ok, f"{len(results)} identities x 100 instances in {elapsed:.1f}s; failing: {bad or 'none'}")
    assert ok


def test_criterion_2_genus1_maps(criterion):
    t = time.perf_counter()
    a = a_eps(genus_table(1, 7), 7)
    m = m_pointed_series(m_eps_series(a, 1, 2, 5))
    got = {d: m.part(d, 1).terms.get((1,)) for d in M11_P2}
    wrong = [d for d in M11_P2 if got[d] != parse_coeff(M11_P2[d])]
    elapsed = time.perf_counter() - t
    criterion(2, not wrong, f"d=2..5 exact in {elapsed:.1f}s; mismatched d: {wrong or 'none'}")
    assert not wrong


def test_criterion_3_genus1_routes(criterion):
    a = a_eps(genus_table(1, 8), 8)
    checked, bad = 0, []
    for r in (1, 2):
        m = m_eps_series(a, 1, r, 8)
        for d in range(0, 9):
            for n in range(0, 9 - d):
                if n + d == 0:
                    continue
                forms = genus1_recursion(n, d, r, a)
                checked += 1
                if not (forms["closed"] == forms["recursive"] == m.part(d, n)):
                    bad.append((r, n, d))
    criterion(3, not bad, f"{checked} cells, n+d<=8, r in {{1,2}}; disagreements: {bad[:3] or 'none'}")
    assert not bad


def test_criterion_4_genus2_maps(criterion):
    a = a_eps(genus_table(2, 7), 7)
    gauntlet = cor44_identity_check(a, 2, 7)
    m = m_eps_series(a, 2, 2, 4)
    wrong = [d for d in M20_P2 if m.part(d, 0).terms.get(()) != parse_coeff(M20_P2[d])]
    map1 = parse_coeff("L^5+L^4-L^2-L")
    m2 = a.terms.get(())
    factors = m2 == parse_coeff("L^3") and m.part(2, 0).terms.get(()) == map1 * m2
    ok = gauntlet.ok and not wrong and factors
    criterion(4, ok, f"gauntlet {'passed' if gauntlet.ok else 'failed at ' + str(gauntlet.first_failure)}"
                     f" on {len(gauntlet.cells)} cells; d=2..4 mismatched: {wrong or 'none'};"
                     f" d=2 = (L^5+L^4-L^2-L) * e(M_2) with e(M_2) = {format_coeff(m2)}: {factors}")
    assert ok


def test_criterion_5_pic0(criterion):
    g2 = pic_series(a_eps(genus_table(2, 7), 7), 2).terms.get(())
    ok2 = g2 == parse_coeff(PIC0[2])
    path = os.environ.get(GENUS3_ENV)
    if path:
        g3 = pic_series(a_eps(load_table(path), 5), 3).terms.get(())
        ok3 = g3 == parse_coeff(PIC0[3])
        note3 = f"g=3 from {path}: {format_coeff(g3)}"
    else:
        ok3 = False
        note3 = f"g=3 not verified: no genus-3 table available (set {GENUS3_ENV})"
    criterion(5, ok2 and ok3, f"g=2: {format_coeff(g2)} ({'match' if ok2 else 'MISMATCH'}); {note3}")
    assert ok2, "genus-2 Picard class"
    assert ok3, note3


def test_criterion_6_specialization(criterion):
    cells, failures, observations = 0, [], []
    a1 = a_eps(bundled_table("genus1.mgn"), 8)
    for r in (1, 2, 3):
        rep = specialization_suite(m_eps_series(a1, 1, r, 7), 1)
        cells += len(rep["L=1"])
        failures += [(1, r) + f for f in rep["hard_failures"]]
    a2 = a_eps(bundled_table("genus2.mgn"), 7)
    for r in (1, 2, 3):
        rep = specialization_suite(m_eps_series(a2, 2, r, 4), 2)
        cells += len(rep["L=1"])
        failures += [(2, r) + f for f in rep["hard_failures"]]
        observations += [(2, r) + o for o in rep["observations"]]
    genus2_rows_at0 = all(cf_specialize(parse_coeff(v), 0) == 0 for v in M20_P2.values())
    ok = not failures and genus2_rows_at0
    criterion(6, ok, f"{cells} cells; hard failures: {failures[:3] or 'none'}; genus-2 rows at L=0: "
                     f"{'all zero' if genus2_rows_at0 else 'nonzero'}; other g=2 L=0 nonvanishing"
                     f" (evidence only): {len(observations)}")
    assert ok


def test_criterion_7_stability(criterion):
    a = a_eps(bundled_table("genus1.mgn"), 9)
    lines, bad = [], []
    m = m_pointed_series(m_eps_series(a, 1, 2, 5))
    rep = stability_check(1, 2, 1, 4, m)
    # the M_{1,1}(P^2, d) rows agree after an L^3 shift in every L-degree >= 7
    r4, r5 = parse_coeff(M11_P2[4]), parse_coeff(M11_P2[5])
    diff = r5 - r4 * parse_coeff("L^3")
    top_diff = max((e[0] for e in diff.num.terms), default=-1)
    table_ok = rep["holds_above_bound"] and top_diff < 7
    if not table_ok:
        bad.append((2, 1, 4))
    lines.append(f"r=2 n=1 d=4->5 above weight {rep['improved_bound']}, rows differ only below L^{top_diff + 1}")
    m1 = m_pointed_series(m_eps_series(a, 1, 1, 7))
    for n in (0, 1, 2):
        for d in range(0, 7):
            if not stability_check(1, 1, n, d, m1)["holds_above_bound"]:
                bad.append((1, n, d))
    lines.append("r=1 n<=2 d<=6 via the pipeline")
    criterion(7, not bad, "; ".join(lines) + f"; failures: {bad or 'none'}")
    assert not bad


def test_criterion_8_redundancy(criterion, capsys, monkeypatch):
    calls = []
    real = cli._redundancy
    monkeypatch.setattr(cli, "_redundancy", lambda *args: calls.append(args) or real(*args))
    runs = [
        ["--what", "map", "--g", "1", "--r", "2", "--n", "1", "--d", "3"],
        ["--what", "map", "--g", "2", "--r", "2", "--n", "0", "--d-max", "4"],
        ["--what", "quasimap", "--g", "2", "--r", "1", "--n", "1", "--d", "3"],
        ["--what", "pic", "--g", "2", "--n-max", "3"],
        ["--what", "sym", "--g", "1", "--n", "2", "--d", "2"],
    ]
    codes = [cli.main(["compute", *argv, "--no-cache"]) for argv in runs]
    capsys.readouterr()
    every_run = codes == [0] * len(runs) and len(calls) == len(runs)

    # the closed forms themselves, over the full in-range grid
    bad = []
    for g, bound, d_max in ((1, 8, 8), (2, 7, 5)):
        a = a_eps(bundled_table(f"genus{g}.mgn"), bound)
        if not cor44_identity_check(a, g, d_max).ok:
            bad.append(("sym vs pic", g))
        for r in (1, 2, 3):
            try:
                q_plus_series(a, g, r, d_max)
                f_low(a, g, r, 2 * g - 2)
            except CrossCheckError as exc:
                bad.append((g, r, str(exc)))
            if not cor49_check(a, g, r, d_max).ok:
                bad.append(("first differences", g, r))
    ok = every_run and not bad
    criterion(8, ok, f"{len(calls)}/{len(runs)} CLI runs cross-checked; closed-form failures: {bad or 'none'}")
    assert ok


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q"]))
