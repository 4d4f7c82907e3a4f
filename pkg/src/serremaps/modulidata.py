"""External inputs: tables of ``e^{S_n}(M_{g,n})`` and of ``e_c(M_g, V_w)``.

Two line-oriented file formats are supported.

``MGN-TABLE v1``::

    MGN-TABLE v1
    provenance: <free text>
    genus 1
    n 2
    1,1 : (1/2)*L^2
    2 : (1/2)*L^2

One ``<partition> : <coefficient of p_partition>`` line per nonzero term; the
empty partition is written ``()``.

``V-TABLE v1``::

    V-TABLE v1
    provenance: <free text>
    genus 2
    2 0 : 0

Lines are ``<l> <m> : <value>`` in genus two and ``<k> : <value>`` in genus
one; ``genus`` defaults to 2. Odd total weight is zero by the hyperelliptic
involution and may be omitted.
"""

from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass
from functools import cached_property
from importlib import resources
from pathlib import Path
from typing import Mapping

from .coeffs import ZERO, CoeffFrac, L, format_coeff, parse_coeff
from .localsys import epsilon_series
from .symfunc import (
    EXACT,
    SymSeries,
    basis_to_p,
    partitions_of,
    sf_exp_p1,
    sf_log_p1,
    sf_mul,
    sf_plethysm,
    z,
)

__all__ = [
    "TableError",
    "InsufficientDataError",
    "AgTable",
    "VTable",
    "load_table",
    "parse_table",
    "bundled_table",
    "a_eps",
    "table_from_eps",
    "local_system_a_eps",
    "remark53_a2",
    "required_range",
    "CONVENTIONS",
]

CONVENTIONS = ("exact", "literal", "transpose")


class TableError(ValueError):
    """Malformed or invalid table; ``where`` names the offending ``(n, partition)``."""

    def __init__(self, msg: str, where=None):
        super().__init__(msg if where is None else f"{msg} at {where}")
        self.where = where


class InsufficientDataError(LookupError):
    """The loaded data does not cover what a computation needs."""

    def __init__(self, msg: str, missing=None):
        super().__init__(msg)
        self.missing = missing


def _hash(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()


@dataclass(frozen=True)
class AgTable:
    """``n -> e^{S_n}(M_{g,n})`` as homogeneous degree-``n`` symmetric functions."""

    genus: int
    entries: Mapping[int, SymSeries]
    provenance: str
    content_hash: str = ""

    def __post_init__(self):
        if self.genus < 1:
            raise TableError("genus must be at least 1")
        for n, f in self.entries.items():
            _validate_entry(self.genus, n, f)
        if not self.content_hash:
            object.__setattr__(self, "content_hash", _hash(self.dumps()))

    @property
    def n_min(self) -> int:
        return 1 if self.genus == 1 else 0

    @cached_property
    def n_max(self) -> int:
        """Largest ``N`` with every ``n_min <= n <= N`` present (``n_min - 1`` if none)."""
        n = self.n_min
        while n in self.entries:
            n += 1
        return n - 1

    def series(self, bound: int) -> SymSeries:
        """``sum_n e^{S_n}(M_{g,n})`` through degree ``bound``."""
        self.require(bound)
        out = SymSeries.zero(bound)
        for n in range(self.n_min, bound + 1):
            out = out + SymSeries(self.entries[n].terms, bound, _clean=True)
        return out

    def require(self, bound: int) -> None:
        for n in range(self.n_min, bound + 1):
            if n not in self.entries:
                raise InsufficientDataError(
                    f"genus-{self.genus} table lacks n={n} (needed through n={bound}, covers n<={self.n_max})",
                    missing=(n, bound),
                )

    def dumps(self) -> str:
        lines = ["MGN-TABLE v1", f"provenance: {self.provenance}", f"genus {self.genus}"]
        for n in sorted(self.entries):
            lines.append(f"n {n}")
            for lam in partitions_of(n):
                c = self.entries[n].terms.get(lam)
                if c:
                    key = ",".join(map(str, lam)) if lam else "()"
                    lines.append(f"{key} : {format_coeff(c)}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class VTable:
    """``w -> e_c(M_g, V_w)`` for ``g`` in ``{1, 2}``."""

    genus: int
    entries: Mapping[tuple, CoeffFrac]
    provenance: str
    content_hash: str = ""

    def __post_init__(self):
        if self.genus not in (1, 2):
            raise TableError("local-system tables are supported in genus 1 and 2")
        for w in self.entries:
            if len(w) != self.genus or any(x < 0 for x in w) or list(w) != sorted(w, reverse=True):
                raise TableError("bad highest weight", where=w)
        if not self.content_hash:
            object.__setattr__(self, "content_hash", _hash(self.dumps()))

    @cached_property
    def max_weight(self) -> int:
        """Largest ``k`` such that every weight of total ``<= k`` is known."""
        k = 0
        while all(self._known(w) for w in _weights(self.genus, k)):
            k += 1
        return k - 1

    def _known(self, w: tuple) -> bool:
        return sum(w) % 2 == 1 or w in self.entries

    def value(self, w: tuple) -> CoeffFrac:
        if sum(w) % 2 == 1:
            return ZERO
        if w not in self.entries:
            raise InsufficientDataError(f"no value for e_c(M_{self.genus}, V_{w})", missing=w)
        return self.entries[w]

    def dumps(self) -> str:
        lines = ["V-TABLE v1", f"provenance: {self.provenance}", f"genus {self.genus}"]
        for w in sorted(self.entries, key=lambda w: (sum(w), [-x for x in w])):
            lines.append(f"{' '.join(map(str, w))} : {format_coeff(self.entries[w])}")
        return "\n".join(lines) + "\n"


def _weights(g: int, total: int) -> list[tuple]:
    if g == 1:
        return [(total,)]
    return [(l, total - l) for l in range(total, -1, -1) if l >= total - l]


def _validate_entry(genus: int, n: int, f: SymSeries) -> None:
    if genus == 1 and n < 1:
        raise TableError("genus-1 tables start at n=1", where=(n, None))
    for lam, c in f.terms.items():
        if sum(lam) != n:
            raise TableError("entry is not homogeneous", where=(n, lam))
        scaled = c * z(lam)
        if not scaled.is_polynomial() or not scaled.num.is_integral():
            raise TableError(f"z_lambda * coefficient = {scaled} is not an integral polynomial", where=(n, lam))


# ---- parsing ----

_HEADER_RE = re.compile(r"^(MGN-TABLE|V-TABLE) v(\d+)$")


def parse_table(text: str) -> AgTable | VTable:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise TableError("empty table")
    m = _HEADER_RE.match(lines[0])
    if not m:
        raise TableError(f"unrecognized header {lines[0]!r}")
    kind, version = m.group(1), int(m.group(2))
    if version != 1:
        raise TableError(f"unsupported {kind} version {version}")
    provenance = None
    genus = None
    body = []
    for ln in lines[1:]:
        if ln.startswith("provenance:"):
            provenance = ln[len("provenance:") :].strip()
        elif ln.startswith("genus "):
            genus = int(ln.split()[1])
        else:
            body.append(ln)
    if not provenance:
        raise TableError("missing mandatory 'provenance:' line")
    digest = _hash(text)
    if kind == "V-TABLE":
        return _parse_vtable(body, genus or 2, provenance, digest)
    if genus is None:
        raise TableError("missing 'genus <g>' line")
    return _parse_mgn(body, genus, provenance, digest)


def _parse_mgn(body, genus, provenance, digest) -> AgTable:
    raw: dict[int, dict] = {}
    n = None
    for ln in body:
        if ln.startswith("n "):
            n = int(ln.split()[1])
            if n in raw:
                raise TableError("duplicate block", where=(n, None))
            raw[n] = {}
            continue
        if n is None or ":" not in ln:
            raise TableError(f"unexpected line {ln!r}")
        key, value = (s.strip() for s in ln.split(":", 1))
        lam = () if key in ("()", "") else tuple(int(x) for x in key.split(","))
        lam = tuple(sorted(lam, reverse=True))
        try:
            c = parse_coeff(value)
        except ValueError as exc:
            raise TableError(f"cannot parse {value!r}: {exc}", where=(n, lam)) from None
        if sum(lam) != n:
            raise TableError("entry is not homogeneous", where=(n, lam))
        raw[n][lam] = raw[n].get(lam, ZERO) + c
    entries = {k: SymSeries(v) for k, v in raw.items()}
    return AgTable(genus, entries, provenance, digest)


def _parse_vtable(body, genus, provenance, digest) -> VTable:
    entries = {}
    for ln in body:
        if ":" not in ln:
            raise TableError(f"unexpected line {ln!r}")
        key, value = (s.strip() for s in ln.split(":", 1))
        w = tuple(int(x) for x in key.split())
        if w in entries:
            raise TableError("duplicate weight", where=w)
        entries[w] = parse_coeff(value)
    return VTable(genus, entries, provenance, digest)


def load_table(path) -> AgTable | VTable:
    return parse_table(Path(path).read_text(encoding="utf-8"))


def bundled_table(name: str) -> AgTable | VTable:
    """Load one of the data files shipped in ``serremaps/data``."""
    return parse_table(resources.files("serremaps").joinpath("data", name).read_text(encoding="utf-8"))


# ---- a_g^eps ----


def a_eps(table: AgTable, bound: int) -> SymSeries:
    """``a_g^eps = (sum_n e^{S_n}(M_{g,n})) o Exp(p_1)`` through degree ``bound``."""
    f = table.series(bound)
    if bound < 1:
        return f
    return sf_plethysm(f, sf_exp_p1(bound)).truncate(bound)


def table_from_eps(a: SymSeries, genus: int, provenance: str) -> AgTable:
    """Invert ``a_eps``: ``e^{S_n}(M_{g,n})`` is the degree-``n`` part of ``a o Log(p_1)``."""
    if a.bound == EXACT:
        raise ValueError("need a truncated series")
    m = sf_plethysm(a, sf_log_p1(max(a.bound, 1))).truncate(a.bound)
    start = 1 if genus == 1 else 0
    return AgTable(genus, {n: m.degree_part(n) for n in range(start, a.bound + 1)}, provenance)


def local_system_a_eps(vtab: VTable, bound: int) -> SymSeries:
    """``a_g^eps`` from the fibred powers of the universal curve, decomposed exactly."""
    if vtab.max_weight < bound:
        raise InsufficientDataError(
            f"V-table covers total weight <= {vtab.max_weight}, need {bound}", missing=bound
        )
    start = 1 if vtab.genus == 1 else 0
    return epsilon_series(vtab.genus, bound, vtab.value, start=start)


def _exp_factor(bound: int) -> SymSeries:
    """``exp(sum_k p_k (1 + L^k) / k) = Exp(p_1) * Exp(L p_1)``."""
    e = SymSeries(sf_exp_p1(bound).terms, bound) + 1
    # degree-n part of Exp(L p_1) is L^n h_n
    eL = SymSeries({lam: c * L ** sum(lam) for lam, c in e.terms.items()}, bound)
    return sf_mul(e, eL)


def remark53_a2(vtab: VTable, bound: int, convention: str = "exact") -> SymSeries:
    """Candidate ``a_2^eps`` from genus-two local-system data.

    ``exact`` decomposes the fibred powers through ``GSp_4`` characters.
    ``literal`` is the three-factor product
    ``exp(sum p_k(1+L^k)/k) * sum_{eta even parts} s_eta * sum s_{l,m} e_c(M_2, V_{l,m})``.
    ``transpose`` is the Koszul-signed reading of the same product: the last
    factor uses ``s_{(l,m)'}`` and ``s_eta`` carries the Tate twist ``L^{|eta|/2}``
    of the symplectic form. It agrees with ``exact`` through degree 3 and
    misses the ``Sp_4`` modification terms from degree 4 on.
    """
    if vtab.genus != 2:
        raise ValueError("remark53_a2 needs a genus-2 V-table")
    if convention not in CONVENTIONS:
        raise ValueError(f"convention must be one of {CONVENTIONS}")
    if convention == "exact":
        return local_system_a_eps(vtab, bound)
    if vtab.max_weight < bound:
        raise InsufficientDataError(
            f"V-table covers total weight <= {vtab.max_weight}, need {bound}", missing=bound
        )
    transpose = convention == "transpose"
    even = SymSeries.zero(bound)
    ls = SymSeries.zero(bound)
    for n in range(bound + 1):
        twist = L ** (n // 2) if transpose else 1
        for eta in partitions_of(n):
            if all(x % 2 == 0 for x in eta):
                even = even + SymSeries(basis_to_p("s", eta).terms, bound).scale(twist)
        for l, m in _weights(2, n):
            v = vtab.value((l, m))
            if v:
                shape = tuple(x for x in (l, m) if x)
                shape = _conj(shape) if transpose else shape
                ls = ls + SymSeries(basis_to_p("s", shape).terms, bound).scale(v)
    return sf_mul(sf_mul(_exp_factor(bound), even), ls)


def _conj(lam: tuple) -> tuple:
    if not lam:
        return ()
    return tuple(sum(1 for x in lam if x > j) for j in range(lam[0]))


# ---- data requirements ----


def required_range(g: int, r: int, n_out: int, d_out: int, what: str = "map") -> dict:
    """Smallest table range that makes the requested output exact.

    Returns ``{"table_n_max": N, "a_eps_bound": N}``. The derivation follows
    validity through the pipeline: the quasimap series at ``q^e`` is valid
    to ``B - e``; ``f_{2,r}`` loses three degrees at ``q^2`` through
    ``h_3^perp``; ``exp(-D)`` then spends one degree per step of ``q``.
    """
    if what == "pic":
        need = n_out + 2 * g - 1
    elif what in ("quasimap", "sym"):
        need = n_out + max(d_out, 2 * g - 1)
    elif what == "map":
        if g == 1:
            need = n_out + d_out
        elif g == 2:
            need = n_out + d_out + (1 if d_out >= 2 else 0)
        else:
            raise InsufficientDataError(f"no closed form for f_{{{g},r}} in genus {g}", missing="f_low")
    else:
        raise ValueError(f"unknown target {what!r}")
    need = max(need, 1 if g == 1 else 0)
    return {"table_n_max": need, "a_eps_bound": need}
