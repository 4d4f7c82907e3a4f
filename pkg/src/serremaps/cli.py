"""Command-line interface: ``serremaps compute`` and ``serremaps verify``.

Exit codes: 0 success, 1 usage error, 2 insufficient input data,
3 internal cross-check failure (or any failed verification).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import os
import sys
import tempfile
import time
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from . import ENGINE_VERSION
from .coeffs import format_coeff, parse_coeff
from .formulas import (
    CrossCheckError,
    cor44_identity_check,
    cor49_check,
    genus1_recursion,
    m_eps_series,
    m_pointed_series,
    pic_polynomiality,
    pic_pointed,
    pic_series,
    q_plus_series,
    f_low,
    specialization_suite,
    stability_check,
    sym_powers_series,
)
from .modulidata import (
    CONVENTIONS,
    AgTable,
    InsufficientDataError,
    TableError,
    VTable,
    a_eps,
    bundled_table,
    load_table,
    local_system_a_eps,
    remark53_a2,
    required_range,
)
from .oracle import identity_suite
from .qseries import QSeries, qs_expD
from .symfunc import SymSeries, ValidityError

__all__ = ["main", "RunConfig", "REFERENCE", "cache_dir", "build_parser"]

log = logging.getLogger("serremaps")

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_CHECK = 0, 1, 2, 3
CACHE_ENV = "SERREMAPS_CACHE"

# published values the `verify tables` suite compares against
REFERENCE = {
    "M_11(P2,d)": {
        2: "L^7+2L^6+L^5-L^4-2L^3-L^2",
        3: "L^10+2L^9+L^8-2L^7-3L^6+2L^4+L^3-L^2-L",
        4: "L^13+2L^12+L^11-2L^10-3L^9+2L^7-3L^5-2L^4+L^3+2L^2+L",
        5: "L^16+2L^15+L^14-2L^13-3L^12+2L^10-3L^8-2L^7+2L^6+4L^5+2L^4-L^3-2L^2-L",
    },
    "M_20(P2,d)": {
        2: "L^8+L^7-L^5-L^4",
        3: "L^10+L^9-L^7-L^6-L^5-L^4+L^2+L",
        4: "L^13+2L^12+2L^11-L^10-3L^9-3L^8-L^7+2L^6+3L^5+2L^4-L^3-2L^2-L",
    },
    "Pic^0_g": {2: "L^5+L^4+L^3-1", 3: "L^9+2L^8+3L^7+L^6+L^3+2L^2"},
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


@dataclass(frozen=True)
class RunConfig:
    what: str
    g: int
    r: int
    ns: tuple
    ds: tuple
    marking: str
    convention: str
    table: str | None
    vtable: str | None
    fmt: str
    cache: Path | None


# ---- inputs ----


def _load_input(cfg: RunConfig, bound: int) -> tuple[SymSeries, dict]:
    """``a_g^eps`` through ``bound`` plus a description of where it came from."""
    if cfg.convention != "exact" or cfg.vtable:
        vtab = load_table(cfg.vtable) if cfg.vtable else _bundled(f"genus{cfg.g}.vtab", cfg.g)
        if not isinstance(vtab, VTable):
            raise TableError(f"{cfg.vtable} is not a V-TABLE")
        if vtab.genus != cfg.g:
            raise TableError(f"V-table is for genus {vtab.genus}, not {cfg.g}")
        if cfg.convention == "exact":
            a = local_system_a_eps(vtab, bound)
        else:
            if cfg.g != 2:
                raise TableError("even-parts conventions only apply to genus-two local systems")
            a = remark53_a2(vtab, bound, cfg.convention)
        return a, {"kind": "V-TABLE", "sha256": vtab.content_hash, "provenance": vtab.provenance}
    table = load_table(cfg.table) if cfg.table else _bundled(f"genus{cfg.g}.mgn", cfg.g)
    if not isinstance(table, AgTable):
        raise TableError(f"{cfg.table} is not an MGN-TABLE")
    if table.genus != cfg.g:
        raise TableError(f"table is for genus {table.genus}, not {cfg.g}")
    return a_eps(table, bound), {"kind": "MGN-TABLE", "sha256": table.content_hash, "provenance": table.provenance}


def _bundled(name: str, g: int):
    try:
        return bundled_table(name)
    except FileNotFoundError:
        raise InsufficientDataError(f"no bundled data for genus {g}; pass --table", missing=name) from None


# ---- computation ----


def _redundancy(a: SymSeries, g: int, r: int, d_max: int) -> None:
    """Always-on cross-checks; any mismatch is an engine or data bug."""
    for report in (cor44_identity_check(a, g, d_max), cor49_check(a, g, r, d_max)):
        if not report.ok:
            raise CrossCheckError(f"{report.name} fails at (n, d) = {report.first_failure}")
    if g <= 2:
        f_low(a, g, r, 2 * g - 2)


def _compute(cfg: RunConfig) -> tuple[object, dict]:
    n_top, d_top = max(cfg.ns), max(cfg.ds)
    need = required_range(cfg.g, cfg.r, n_top, d_top, cfg.what)["a_eps_bound"]
    a, source = _load_input(cfg, need)
    d_check = max(d_top, 2 * cfg.g + 1)
    _redundancy(a, cfg.g, cfg.r, d_check)
    if cfg.what == "pic":
        result = pic_pointed(a, cfg.g) if cfg.marking == "distinct" else pic_series(a, cfg.g)
    elif cfg.what == "sym":
        result = sym_powers_series(a, cfg.g, d_top)
    elif cfg.what == "quasimap":
        result = q_plus_series(a, cfg.g, cfg.r, d_top)
    else:
        m = m_eps_series(a, cfg.g, cfg.r, d_top)
        # exp(D) M = f + Q^+, recomputed as a final consistency check
        target = f_low(a, cfg.g, cfg.r, d_top) + q_plus_series(a, cfg.g, cfg.r, d_top)
        if not qs_expD(m).agrees_with(target):
            raise CrossCheckError("exp(D) M^eps differs from f + Q^+")
        result = m
    if cfg.marking == "distinct" and isinstance(result, QSeries):
        result = m_pointed_series(result)
    return result, source


def _cache_key(cfg: RunConfig, source_hash: str) -> dict:
    return {
        "engine": ENGINE_VERSION,
        "what": cfg.what,
        "g": cfg.g,
        "r": cfg.r if cfg.what in ("map", "quasimap") else None,
        "n_max": max(cfg.ns),
        "d_max": max(cfg.ds),
        "marking": cfg.marking,
        "convention": cfg.convention,
        "input": source_hash,
    }


def _input_hash(cfg: RunConfig) -> str:
    """Hash of the raw input bytes, so any edit to a table is a cache miss."""
    h = hashlib.sha256()
    h.update(Path(cfg.table).read_bytes() if cfg.table else _bundled_bytes(f"genus{cfg.g}.mgn"))
    if cfg.vtable:
        h.update(Path(cfg.vtable).read_bytes())
    elif cfg.convention != "exact":
        h.update(_bundled_bytes(f"genus{cfg.g}.vtab"))
    return h.hexdigest()


def _bundled_bytes(name: str) -> bytes:
    try:
        return resources.files("serremaps").joinpath("data", name).read_bytes()
    except FileNotFoundError:
        return b"-"


def cache_dir(explicit: str | None = None) -> Path:
    if explicit:
        return Path(explicit)
    env = os.environ.get(CACHE_ENV)
    if env:
        return Path(env)
    base = os.environ.get("XDG_CACHE_HOME") or Path.home() / ".cache"
    return Path(base) / "serremaps"


def _cache_path(root: Path, key: dict) -> Path:
    digest = hashlib.sha256(json.dumps(key, sort_keys=True).encode()).hexdigest()
    return root / f"{digest}.json"


def _cache_load(root: Path, key: dict):
    path = _cache_path(root, key)
    if not path.exists():
        return None
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
        if data["key"] != key:
            return None
        obj = data["result"]
        result = QSeries.from_json(obj) if obj["type"] == "QSeries" else SymSeries.from_json(obj)
        return result, data["source"]
    except (OSError, ValueError, KeyError, TypeError) as exc:
        log.warning("ignoring corrupt cache entry %s (%s)", path.name, exc)
        return None


def _cache_store(root: Path, key: dict, result, source: dict) -> None:
    root.mkdir(parents=True, exist_ok=True)
    obj = result.to_json()
    obj["type"] = type(result).__name__
    payload = json.dumps({"key": key, "source": source, "result": obj}, sort_keys=True)
    fd, tmp = tempfile.mkstemp(dir=root, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(payload)
        os.replace(tmp, _cache_path(root, key))
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise


def compute(cfg: RunConfig):
    """Return ``(result, source)``, using the cache when enabled."""
    key = None
    if cfg.cache is not None:
        key = _cache_key(cfg, _input_hash(cfg))
        hit = _cache_load(cfg.cache, key)
        if hit is not None:
            return hit
    result, source = _compute(cfg)
    if key is not None:
        try:
            _cache_store(cfg.cache, key, result, source)
        except OSError as exc:
            log.warning("cache not written: %s", exc)
    return result, source


# ---- rendering ----


def _cells(cfg: RunConfig, result) -> list[tuple]:
    out = []
    for d in (cfg.ds if isinstance(result, QSeries) else (None,)):
        for n in cfg.ns:
            part = result.part(d, n) if d is not None else _degree(result, n)
            out.append((n, d, part))
    return out


def _degree(f: SymSeries, n: int) -> SymSeries:
    if n > f.bound:
        raise ValidityError(f"degree {n} lies beyond validity {f.bound}")
    return f.degree_part(n)


def _plain(part: SymSeries, n: int, latex: bool = False) -> str:
    if n <= 1:
        lam = (1,) if n == 1 else ()
        return format_coeff(part.terms.get(lam, parse_coeff("0")), latex=latex)
    if latex:
        return " + ".join(
            f"\\left({format_coeff(c, latex=True)}\\right) p_{{{','.join(map(str, lam))}}}" for lam, c in part
        ) or "0"
    return part.format()


def render(cfg: RunConfig, result, source: dict) -> str:
    cells = _cells(cfg, result)
    single = len(cells) == 1
    if cfg.fmt == "json":
        doc = {
            "what": cfg.what,
            "g": cfg.g,
            "r": cfg.r,
            "marking": cfg.marking,
            "convention": cfg.convention,
            "engine_version": ENGINE_VERSION,
            "input": source,
            "cells": [
                {"n": n, "d": d, "value": part.to_json(), "text": _plain(part, n)} for n, d, part in cells
            ],
        }
        return json.dumps(doc, indent=2, sort_keys=True)
    if cfg.fmt == "csv":
        lines = ["n,d,partition,coefficient"]
        for n, d, part in cells:
            for lam, c in part:
                lines.append(f"{n},{'' if d is None else d},{' '.join(map(str, lam))},{format_coeff(c)}")
        return "\n".join(lines)
    if cfg.fmt == "latex":
        head = "$n$ & $d$ & class \\\\ \\hline" if not single else None
        rows = [f"${n}$ & ${'' if d is None else d}$ & ${_plain(p, n, True)}$ \\\\ \\hline" for n, d, p in cells]
        if single:
            return f"${_plain(cells[0][2], cells[0][0], True)}$"
        return "\n".join(["\\begin{tabular}{|c|c|c|}", "\\hline", head] + rows + ["\\end{tabular}"])
    if single:
        return _plain(cells[0][2], cells[0][0])
    return "\n".join(f"n={n} d={'-' if d is None else d}: {_plain(p, n)}" for n, d, p in cells)


def _certificate(result, source: dict) -> str:
    if isinstance(result, QSeries):
        valid = ", ".join(f"q^{d}: n<={v}" for d, v in enumerate(result.validity))
    else:
        valid = f"n<={result.bound}"
    return f"# valid {valid}\n# input {source['kind']} sha256={source['sha256']}"


# ---- verification suites ----


def _check(name: str, ok: bool, detail: str = "") -> dict:
    return {"name": name, "ok": bool(ok), "detail": detail}


def suite_identities(count: int = 20, seed: int = 0) -> list[dict]:
    """Data-free identities, then the structural checks on the bundled tables."""
    out = [_check(r["name"], r["ok"], f"{r['instances']} instances, {r['seconds']}s") for r in identity_suite(count, seed)]
    for g, bound in ((1, 8), (2, 7)):
        a = _genus_input(g, bound)
        for r in (1, 2):
            try:
                q_plus_series(a, g, r, 6)
                ok = True
            except CrossCheckError:
                ok = False
            out.append(_check(f"quasimap closed forms agree (g={g}, r={r})", ok))
        out.append(_check(f"sym powers vs Picard (g={g})", cor44_identity_check(a, g, 6).ok))
    # sensitivity: one corrupted coefficient must be caught and located
    a = _genus_input(2, 7)
    lam = (2, 1, 1)
    bad = SymSeries({**a.terms, lam: a.terms[lam] + 1}, a.bound)
    rep = cor44_identity_check(bad, 2, 6)
    out.append(_check("corrupted input is detected", not rep.ok, f"first failing (n, d) = {rep.first_failure}"))
    return out


def _genus_input(g: int, bound: int) -> SymSeries:
    return a_eps(bundled_table(f"genus{g}.mgn"), bound)


def suite_genus1(total: int = 8) -> list[dict]:
    a = _genus_input(1, total)
    out = []
    for r in (1, 2):
        m = m_eps_series(a, 1, r, total)
        bad = []
        for d in range(0, total + 1):
            for n in range(0, total - d + 1):
                if n + d == 0:
                    continue
                forms = genus1_recursion(n, d, r, a)
                pipe = m.part(d, n)
                if not (forms["closed"] == pipe == forms["recursive"]):
                    bad.append((n, d))
        out.append(_check(f"closed sum, recursion and pipeline agree (g=1, r={r}, n+d<={total})", not bad,
                          f"first failure {bad[0]}" if bad else ""))
        target = f_low(a, 1, r, total) + q_plus_series(a, 1, r, total)
        out.append(_check(f"exp(D) M^eps = f + Q^+ (g=1, r={r})", qs_expD(m).agrees_with(target)))
        out.append(_check(f"first differences of Q^+ (g=1, r={r})", cor49_check(a, 1, r, total).ok))
    out.append(_check("sym powers vs Picard (g=1)", cor44_identity_check(a, 1, total).ok))
    return out


def suite_genus2(bound: int = 7) -> list[dict]:
    a = _genus_input(2, bound)
    out = [_check("sym powers vs Picard (g=2)", cor44_identity_check(a, 2, 5).ok)]
    for r in (1, 2, 3):
        try:
            f_low(a, 2, r, 2)
            ok = True
        except CrossCheckError:
            ok = False
        out.append(_check(f"q^2 term of f_2,r: closed form vs strata (r={r})", ok))
        out.append(_check(f"first differences of Q^+ (g=2, r={r})", cor49_check(a, 2, r, 5).ok))
    poly = pic_polynomiality(pic_series(a, 2))
    out.append(_check("Picard series is polynomial in L degreewise (g=2)", all(poly.values()),
                      f"non-polynomial degrees {[n for n, v in poly.items() if not v]}"))
    return out


def suite_tables(g: int | None = None) -> list[dict]:
    out = []
    if g in (None, 1):
        a = _genus_input(1, 6)
        m = m_pointed_series(m_eps_series(a, 1, 2, 5))
        for d, ref in REFERENCE["M_11(P2,d)"].items():
            got = m.part(d, 1).terms.get((1,))
            out.append(_check(f"e(M_11(P2,{d}))", got == parse_coeff(ref), format_coeff(got) if got else "0"))
    if g in (None, 2):
        a = _genus_input(2, 7)
        m = m_eps_series(a, 2, 2, 4)
        for d, ref in REFERENCE["M_20(P2,d)"].items():
            got = m.part(d, 0).terms.get(())
            out.append(_check(f"e(M_20(P2,{d}))", got == parse_coeff(ref), format_coeff(got) if got else "0"))
        map1 = parse_coeff("L^5+L^4-L^2-L")
        m2 = a.terms.get(())
        out.append(_check("d=2 row = e(Map_1(P1,P2)) * e(M_2), e(M_2) = L^3",
                          m.part(2, 0).terms.get(()) == map1 * m2 and m2 == parse_coeff("L^3")))
        pic = pic_series(a, 2).terms.get(())
        out.append(_check("e(Pic^0_2)", pic == parse_coeff(REFERENCE["Pic^0_g"][2]), format_coeff(pic)))
    return out


def suite_stability(g=None, r=None, n=None, d=None) -> list[dict]:
    cases = [(1, 2, 1, 4)] + [(1, 1, nn, dd) for nn in (0, 1, 2) for dd in range(0, 7)]
    if g is not None:
        cases = [(g, 2 if r is None else r, 1 if n is None else n, 4 if d is None else d)]
    out = []
    for g_, r_, n_, d_ in cases:
        need = required_range(g_, r_, n_, d_ + 1, "map")["a_eps_bound"]
        m = m_pointed_series(m_eps_series(_genus_input(g_, need), g_, r_, d_ + 1))
        rep = stability_check(g_, r_, n_, d_, m)
        bound = rep["improved_bound"] if rep["improved_bound"] is not None else rep["proven_bound"]
        out.append(_check(
            f"shift d={d_}->{d_ + 1} (g={g_}, r={r_}, n={n_})",
            rep["holds_above_bound"],
            f"proven for p+q > {bound}; "
            + (f"observed for p+q > {rep['empirical_bound']}" if rep["empirical_bound"] >= 0 else "observed at every weight"),
        ))
    return out


def suite_specialize() -> list[dict]:
    out = []
    a1 = _genus_input(1, 7)
    for r in (1, 2):
        rep = specialization_suite(m_eps_series(a1, 1, r, 6), 1)
        out.append(_check(f"L=1 and L=0 vanish for d>=1 (g=1, r={r})", rep["ok"], str(rep["hard_failures"][:3])))
    a2 = _genus_input(2, 7)
    rep = specialization_suite(m_eps_series(a2, 2, 2, 4), 2)
    detail = f"L=0 nonvanishing cells (conjecture evidence only): {rep['observations']}"
    out.append(_check("L=1 vanishes for d>=1 (g=2, r=2)", rep["ok"], detail))
    return out


SUITES = {
    "identities": lambda args: suite_identities(args.count, args.seed),
    "genus1": lambda args: suite_genus1(),
    "genus2": lambda args: suite_genus2(),
    "tables": lambda args: suite_tables(args.g),
    "stability": lambda args: suite_stability(args.g, args.r, args.n, args.d),
    "specialize": lambda args: suite_specialize(),
}


# ---- argument handling ----


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="serremaps", description="Serre characteristics of spaces of maps from curves to P^r.")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("compute", help="compute a class or series")
    c.add_argument("--what", choices=("map", "pic", "quasimap", "sym"), default="map")
    c.add_argument("--g", type=int, required=True)
    c.add_argument("--r", type=int, default=1)
    grp = c.add_mutually_exclusive_group()
    grp.add_argument("--n", type=int)
    grp.add_argument("--n-max", type=int)
    grp = c.add_mutually_exclusive_group()
    grp.add_argument("--d", type=int)
    grp.add_argument("--d-max", type=int)
    c.add_argument("--marking", choices=("distinct", "eps"), default=None,
                   help="distinct points (default for map/pic) or points allowed to collide")
    c.add_argument("--convention", choices=CONVENTIONS, default="exact",
                   help="how genus-two local-system data is turned into a_2^eps")
    c.add_argument("--table", help="MGN-TABLE file (default: bundled)")
    c.add_argument("--vtable", help="V-TABLE file; builds a_g^eps from local systems")
    c.add_argument("--format", dest="fmt", choices=("text", "json", "latex", "csv"), default="text")
    c.add_argument("--cache-dir", help=f"cache directory (default ${CACHE_ENV} or ~/.cache/serremaps)")
    c.add_argument("--no-cache", action="store_true")
    c.add_argument("--certificate", action="store_true", help="append validity and input hashes")

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", choices=tuple(SUITES))
    v.add_argument("--g", type=int)
    v.add_argument("--r", type=int)
    v.add_argument("--n", type=int)
    v.add_argument("--d", type=int)
    v.add_argument("--count", type=int, default=20, help="random instances per identity")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--format", dest="fmt", choices=("text", "json"), default="text")
    return ap


def _config(args) -> RunConfig:
    if args.g < 1 or args.r < 0:
        raise UsageError("need g >= 1 and r >= 0")
    if args.what == "pic":
        ds = (0,)
    elif args.d is not None:
        ds = (args.d,)
    elif args.d_max is not None:
        ds = tuple(range(args.d_max + 1))
    else:
        raise UsageError(f"--what {args.what} needs --d or --d-max")
    ns = (args.n,) if args.n is not None else tuple(range((args.n_max or 0) + 1))
    if min(ns) < 0 or min(ds) < 0:
        raise UsageError("n and d must be nonnegative")
    marking = args.marking or ("distinct" if args.what in ("map", "pic") else "eps")
    cache = None if args.no_cache else cache_dir(args.cache_dir)
    return RunConfig(args.what, args.g, args.r, ns, ds, marking, args.convention,
                     args.table, args.vtable, args.fmt, cache)


def _cmd_compute(args) -> int:
    cfg = _config(args)
    result, source = compute(cfg)
    print(render(cfg, result, source))
    if args.certificate:
        print(_certificate(result, source))
    return EXIT_OK


def _cmd_verify(args) -> int:
    t = time.perf_counter()
    checks = SUITES[args.suite](args)
    ok = all(c["ok"] for c in checks)
    if args.fmt == "json":
        print(json.dumps({"suite": args.suite, "ok": ok, "checks": checks,
                          "seconds": round(time.perf_counter() - t, 2)}, indent=2))
    else:
        for c in checks:
            tail = f"  ({c['detail']})" if c["detail"] else ""
            print(f"{'PASS' if c['ok'] else 'FAIL'}  {c['name']}{tail}")
        print(f"{args.suite}: {'all passed' if ok else 'FAILURES'} in {time.perf_counter() - t:.1f}s")
    return EXIT_OK if ok else EXIT_CHECK


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(f"serremaps: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        return _cmd_compute(args) if args.command == "compute" else _cmd_verify(args)
    except UsageError as exc:
        print(f"serremaps: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (InsufficientDataError, ValidityError) as exc:
        print(f"serremaps: insufficient data: {exc}", file=sys.stderr)
        return EXIT_DATA
    except CrossCheckError as exc:
        print(f"serremaps: internal cross-check failed: {exc}", file=sys.stderr)
        return EXIT_CHECK
    except (TableError, OSError) as exc:
        print(f"serremaps: cannot read input: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
