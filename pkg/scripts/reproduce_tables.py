"""Print the mapping-space and Picard tables from the bundled input data.

    python3 scripts/reproduce_tables.py [--genus3-table PATH]
"""

from __future__ import annotations

import argparse

from serremaps.cli import REFERENCE
from serremaps.coeffs import format_coeff, parse_coeff
from serremaps.formulas import m_eps_series, m_pointed_series, pic_series
from serremaps.modulidata import a_eps, bundled_table, load_table


def row(label, got, ref=None):
    mark = "" if ref is None else ("  ok" if got == parse_coeff(ref) else f"  MISMATCH (expected {ref})")
    print(f"  {label:<6} {format_coeff(got)}{mark}")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--genus3-table", help="MGN-TABLE for genus 3 with n <= 5")
    args = ap.parse_args()

    print("e(M_{1,1}(P^2, d))")
    m = m_pointed_series(m_eps_series(a_eps(bundled_table("genus1.mgn"), 6), 1, 2, 5))
    for d, ref in REFERENCE["M_11(P2,d)"].items():
        row(f"d={d}", m.part(d, 1).terms[(1,)], ref)

    print("e(M_{2,0}(P^2, d))")
    a2 = a_eps(bundled_table("genus2.mgn"), 7)
    m = m_eps_series(a2, 2, 2, 4)
    for d, ref in REFERENCE["M_20(P2,d)"].items():
        row(f"d={d}", m.part(d, 0).terms[()], ref)

    print("e(Pic^0_g)")
    row("g=2", pic_series(a2, 2).terms[()], REFERENCE["Pic^0_g"][2])
    if args.genus3_table:
        row("g=3", pic_series(a_eps(load_table(args.genus3_table), 5), 3).terms[()], REFERENCE["Pic^0_g"][3])
    else:
        print("  g=3    (needs --genus3-table)")


if __name__ == "__main__":
    main()
