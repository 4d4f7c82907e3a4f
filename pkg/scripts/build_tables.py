"""Build the bundled MGN tables from the local-system data.

a_g^eps is assembled from the fibred powers of the universal curve and the
V-table values; e^{S_n}(M_{g,n}) is then the degree-n part of a_g^eps o Log(p_1).

    python3 scripts/build_tables.py
"""

from __future__ import annotations

import argparse
import time
from pathlib import Path

from serremaps.modulidata import load_table, local_system_a_eps, table_from_eps

DATA = Path(__file__).resolve().parents[1] / "src" / "serremaps" / "data"


def build(genus: int, n_max: int, data: Path) -> Path:
    vpath = data / f"genus{genus}.vtab"
    vtab = load_table(vpath)
    t = time.time()
    a = local_system_a_eps(vtab, n_max)
    provenance = (
        f"degree-n parts of a_{genus}^eps o Log(p_1), with a_{genus}^eps from the fibred powers of the"
        f" universal curve decomposed against {vpath.name} (sha256 {vtab.content_hash[:16]});"
        " scripts/build_tables.py"
    )
    table = table_from_eps(a, genus, provenance)
    out = data / f"genus{genus}.mgn"
    out.write_text(table.dumps(), encoding="utf-8")
    print(f"genus {genus}: n <= {n_max} in {time.time() - t:.1f}s -> {out}")
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--genus1-n", type=int, default=10)
    ap.add_argument("--genus2-n", type=int, default=9)
    ap.add_argument("--data", type=Path, default=DATA)
    args = ap.parse_args()
    build(1, args.genus1_n, args.data)
    build(2, args.genus2_n, args.data)


if __name__ == "__main__":
    main()
