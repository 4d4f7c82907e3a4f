"""Truncated symmetric functions over :class:`CoeffFrac`, stored in the power-sum basis.

A :class:`SymSeries` is a sparse map ``partition -> coefficient`` together
with a truncation ``bound``: every coefficient of degree ``<= bound`` is
known exactly, nothing above it is known. ``bound = EXACT`` (infinity)
marks a finite, fully known symmetric function such as ``h_3``.

Partitions are plain tuples of weakly decreasing positive ints.
"""

from __future__ import annotations

import math
from collections import Counter
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Mapping

from .coeffs import ONE, ZERO, CoeffFrac, CoeffLike, as_coeff

__all__ = [
    "EXACT",
    "Partition",
    "partitions_of",
    "z",
    "character",
    "SymSeries",
    "basis_to_p",
    "sf_mul",
    "sf_inner",
    "sf_skew",
    "sf_plethysm",
    "sf_exp_p1",
    "sf_log_p1",
    "sf_extract",
    "ValidityError",
]

EXACT = math.inf
Partition = tuple


class ValidityError(ValueError):
    """A coefficient was requested beyond the degree to which it is known."""


def partitions_of(n: int) -> list[Partition]:
    """All partitions of ``n`` in reverse lexicographic order.

    >>> partitions_of(4)
    [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    return list(_partitions(n, n))


@lru_cache(maxsize=None)
def _partitions(n: int, largest: int) -> tuple[Partition, ...]:
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def z(lam: Partition) -> int:
    """Centralizer order ``prod_i i^{m_i} m_i!``."""
    out = 1
    for i, m in Counter(lam).items():
        out *= i**m * math.factorial(m)
    return out


def _merge(a: Partition, b: Partition) -> Partition:
    if not a:
        return b
    if not b:
        return a
    return tuple(sorted(a + b, reverse=True))


def conjugate(lam: Partition) -> Partition:
    if not lam:
        return ()
    return tuple(sum(1 for part in lam if part > j) for j in range(lam[0]))


# ---- Murnaghan-Nakayama on beta-sets ----


@lru_cache(maxsize=None)
def character(lam: Partition, mu: Partition) -> int:
    """Irreducible character value chi^lam at cycle type mu."""
    if sum(lam) != sum(mu):
        raise ValueError("partitions of different sizes")
    beta = frozenset(part + len(lam) - 1 - i for i, part in enumerate(lam))
    return _mn(beta, tuple(sorted(mu, reverse=True)))


@lru_cache(maxsize=None)
def _mn(beta: frozenset, mu: tuple) -> int:
    if not mu:
        return 1
    k, rest = mu[0], mu[1:]
    total = 0
    for b in beta:
        t = b - k
        if t < 0 or t in beta:
            continue
        height = sum(1 for c in beta if t < c < b)
        total += (-1) ** height * _mn((beta - {b}) | {t}, rest)
    return total


# ---- the series type ----


class SymSeries:
    """Symmetric function in the p-basis, exact up to total degree ``bound``."""

    __slots__ = ("terms", "bound")

    def __init__(self, terms: Mapping[Partition, CoeffLike] | None = None, bound=EXACT, *, _clean=False):
        if bound != EXACT:
            if bound < -1 or int(bound) != bound:
                raise ValueError(f"bad bound {bound!r}")
            bound = int(bound)
        self.bound = bound
        if _clean:
            self.terms: dict[Partition, CoeffFrac] = dict(terms or {})
            return
        out = {}
        for lam, c in (terms or {}).items():
            lam = tuple(sorted((int(x) for x in lam), reverse=True))
            if any(x <= 0 for x in lam):
                raise ValueError(f"not a partition: {lam}")
            if sum(lam) > bound:
                continue
            c = as_coeff(c)
            if c:
                prev = out.get(lam)
                c = c if prev is None else prev + c
                if c:
                    out[lam] = c
                else:
                    out.pop(lam, None)
        self.terms = out

    # constructors
    @classmethod
    def zero(cls, bound=EXACT) -> "SymSeries":
        return cls({}, bound, _clean=True)

    @classmethod
    def constant(cls, c: CoeffLike, bound=EXACT) -> "SymSeries":
        return cls({(): c}, bound)

    @classmethod
    def p(cls, *parts: int, coeff: CoeffLike = 1, bound=EXACT) -> "SymSeries":
        return cls({tuple(parts): coeff}, bound)

    # basic structure
    def __bool__(self) -> bool:
        return bool(self.terms)

    def __iter__(self) -> Iterator[tuple[Partition, CoeffFrac]]:
        return iter(self.terms.items())

    def coeff(self, lam: Partition) -> CoeffFrac:
        lam = tuple(sorted(lam, reverse=True))
        if sum(lam) > self.bound:
            raise ValidityError(f"p{list(lam)} lies beyond the truncation bound {self.bound}")
        return self.terms.get(lam, ZERO)

    def max_degree(self) -> int:
        return max((sum(lam) for lam in self.terms), default=-1)

    def min_degree(self):
        """Lowest degree that can be nonzero (``bound + 1`` if nothing is stored)."""
        if self.terms:
            return min(sum(lam) for lam in self.terms)
        return self.bound + 1

    def is_exact(self) -> bool:
        return self.bound == EXACT

    def degree_part(self, n: int) -> "SymSeries":
        """Homogeneous degree-``n`` component (an exact symmetric function)."""
        if n > self.bound:
            raise ValidityError(f"degree {n} lies beyond the truncation bound {self.bound}")
        return SymSeries({lam: c for lam, c in self.terms.items() if sum(lam) == n}, EXACT, _clean=True)

    def is_homogeneous(self, n: int) -> bool:
        return all(sum(lam) == n for lam in self.terms)

    def truncate(self, bound) -> "SymSeries":
        bound = min(bound, self.bound)
        if bound == self.bound:
            return self
        return SymSeries({lam: c for lam, c in self.terms.items() if sum(lam) <= bound}, bound, _clean=True)

    def map_coeffs(self, fn) -> "SymSeries":
        out = {}
        for lam, c in self.terms.items():
            v = fn(c)
            if v:
                out[lam] = v
        return SymSeries(out, self.bound, _clean=True)

    # linear structure
    def __add__(self, other: "SymSeries") -> "SymSeries":
        if not isinstance(other, SymSeries):
            other = SymSeries.constant(other)
        bound = min(self.bound, other.bound)
        out = {lam: c for lam, c in self.terms.items() if sum(lam) <= bound}
        for lam, c in other.terms.items():
            if sum(lam) > bound:
                continue
            prev = out.get(lam)
            if prev is None:
                out[lam] = c
            else:
                s = prev + c
                if s:
                    out[lam] = s
                else:
                    del out[lam]
        return SymSeries(out, bound, _clean=True)

    __radd__ = __add__

    def __neg__(self) -> "SymSeries":
        return SymSeries({lam: -c for lam, c in self.terms.items()}, self.bound, _clean=True)

    def __sub__(self, other: "SymSeries") -> "SymSeries":
        if not isinstance(other, SymSeries):
            other = SymSeries.constant(other)
        return self + (-other)

    def __rsub__(self, other) -> "SymSeries":
        return SymSeries.constant(other) - self

    def scale(self, c: CoeffLike) -> "SymSeries":
        c = as_coeff(c)
        if not c:
            return SymSeries.zero(self.bound)
        if c == ONE:
            return self
        return SymSeries({lam: v * c for lam, v in self.terms.items()}, self.bound, _clean=True)

    def __mul__(self, other) -> "SymSeries":
        if isinstance(other, SymSeries):
            return sf_mul(self, other)
        return self.scale(other)

    def __rmul__(self, other) -> "SymSeries":
        return self.scale(other)

    def __truediv__(self, c: CoeffLike) -> "SymSeries":
        c = as_coeff(c)
        return SymSeries({lam: v / c for lam, v in self.terms.items()}, self.bound, _clean=True)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymSeries):
            return NotImplemented
        return self.bound == other.bound and self.terms == other.terms

    def agrees_with(self, other: "SymSeries", upto=None) -> bool:
        """Coefficientwise equality through degree ``upto`` (default: common bound)."""
        upto = min(self.bound, other.bound) if upto is None else upto
        if upto > self.bound or upto > other.bound:
            raise ValidityError(f"cannot compare through degree {upto}")
        keys = {lam for lam in self.terms if sum(lam) <= upto} | {lam for lam in other.terms if sum(lam) <= upto}
        return all(self.terms.get(k, ZERO) == other.terms.get(k, ZERO) for k in keys)

    def __repr__(self) -> str:
        b = "exact" if self.bound == EXACT else f"bound={self.bound}"
        return f"SymSeries({self.format()}, {b})"

    def format(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for lam in sorted(self.terms, key=lambda x: (sum(x), x)):
            name = "1" if not lam else "p" + ("".join(map(str, lam)) if max(lam) < 10 else str(list(lam)))
            parts.append(f"({self.terms[lam]})*{name}")
        return " + ".join(parts)

    def to_json(self) -> dict:
        terms = [
            {"partition": list(lam), "coeff": self.terms[lam].to_json()}
            for lam in sorted(self.terms, key=lambda x: (sum(x), [-v for v in x]))
        ]
        return {"bound": None if self.bound == EXACT else self.bound, "basis": "p", "terms": terms}

    @classmethod
    def from_json(cls, data: Mapping) -> "SymSeries":
        if data.get("basis", "p") != "p":
            raise ValueError("only the power-sum basis is serialized")
        bound = EXACT if data.get("bound") is None else int(data["bound"])
        return cls({tuple(t["partition"]): CoeffFrac.from_json(t["coeff"]) for t in data["terms"]}, bound)


# ---- basis conversions ----


@lru_cache(maxsize=None)
def _h(n: int) -> SymSeries:
    return SymSeries({mu: Fraction(1, z(mu)) for mu in partitions_of(n)}, EXACT)


@lru_cache(maxsize=None)
def _e(n: int) -> SymSeries:
    return SymSeries({mu: Fraction((-1) ** (n - len(mu)), z(mu)) for mu in partitions_of(n)}, EXACT)


@lru_cache(maxsize=None)
def _s(lam: Partition) -> SymSeries:
    n = sum(lam)
    return SymSeries({mu: Fraction(character(lam, mu), z(mu)) for mu in partitions_of(n)}, EXACT)


def basis_to_p(basis: str, lam: Iterable[int]) -> SymSeries:
    """Expand ``h_lam``, ``e_lam`` or ``s_lam`` in the power-sum basis."""
    lam = tuple(sorted(lam, reverse=True))
    if basis == "s":
        return _s(lam)
    if basis not in ("h", "e"):
        raise ValueError(f"unknown basis {basis!r}")
    single = _h if basis == "h" else _e
    out = SymSeries.constant(1)
    for part in lam:
        out = sf_mul(out, single(part))
    return out


# ---- products ----


def sf_mul(f: SymSeries, g: SymSeries, bound=None) -> SymSeries:
    """Product; truncated to ``min(f.bound, g.bound)`` (or ``bound`` if smaller)."""
    b = min(f.bound, g.bound)
    if bound is not None:
        b = min(b, bound)
    out: dict[Partition, CoeffFrac] = {}
    gterms = [(lam, sum(lam), c) for lam, c in g.terms.items()]
    for lam, c in f.terms.items():
        dl = sum(lam)
        if dl > b:
            continue
        for mu, dm, d in gterms:
            if dl + dm > b:
                continue
            key = _merge(lam, mu)
            v = c * d
            prev = out.get(key)
            out[key] = v if prev is None else prev + v
    return SymSeries({k: v for k, v in out.items() if v}, b, _clean=True)


def sf_inner(f: SymSeries, g: SymSeries) -> CoeffFrac:
    """Hall inner product ``sum_lam z_lam f_lam g_lam``."""
    total = ZERO
    small, big = (f, g) if len(f.terms) <= len(g.terms) else (g, f)
    for lam, c in small.terms.items():
        d = big.terms.get(lam)
        if d is not None:
            total = total + c * d * z(lam)
    return total


# ---- skewing ----


def _skew_factor(mu_counts: Counter, lam: Partition) -> tuple[int, Partition] | None:
    lam_counts = Counter(lam)
    factor = 1
    for i, m in mu_counts.items():
        have = lam_counts.get(i, 0)
        if have < m:
            return None
        factor *= i**m * math.factorial(have) // math.factorial(have - m)
        lam_counts[i] = have - m
    rest = tuple(sorted(lam_counts.elements(), reverse=True))
    return factor, rest


def sf_skew(f: SymSeries, g: SymSeries) -> SymSeries:
    """``f^perp g``: substitute ``p_n -> n d/dp_n`` in ``f`` and apply to ``g``.

    ``f`` must be exact (a finite symmetric function); the result is known
    through degree ``g.bound - deg f``. Coefficients are not acted on.
    """
    if not f.is_exact():
        raise ValidityError("skewing by a truncated series is not well defined")
    if not f.terms:
        return SymSeries.zero(g.bound)
    bound = g.bound - f.max_degree() if g.bound != EXACT else EXACT
    if bound != EXACT and bound < -1:
        bound = -1
    out: dict[Partition, CoeffFrac] = {}
    fterms = [(Counter(mu), sum(mu), c) for mu, c in f.terms.items()]
    for lam, d in g.terms.items():
        dl = sum(lam)
        for mu_counts, dm, c in fterms:
            if dm > dl or dl - dm > bound:
                continue
            hit = _skew_factor(mu_counts, lam)
            if hit is None:
                continue
            factor, rest = hit
            v = c * d * factor
            prev = out.get(rest)
            out[rest] = v if prev is None else prev + v
    return SymSeries({k: v for k, v in out.items() if v}, bound, _clean=True)


def h_perp(k: int, g: SymSeries) -> SymSeries:
    return sf_skew(_h(k), g) if k else g


def e_perp(k: int, g: SymSeries) -> SymSeries:
    return sf_skew(_e(k), g) if k else g


# ---- plethysm ----


def _adams_series(g: SymSeries, k: int) -> SymSeries:
    """``p_k o g``: p_i -> p_{ki} and Adams operation psi^k on coefficients."""
    bound = EXACT if g.bound == EXACT else k * (g.bound + 1) - 1
    return SymSeries(
        {tuple(k * x for x in lam): c.adams(k) for lam, c in g.terms.items()}, bound, _clean=True
    )


def _pleth_bound(f: SymSeries, g: SymSeries):
    o = g.min_degree()
    if o == EXACT:
        o = 10**9
    bound = EXACT if f.bound == EXACT else (f.bound + 1) * o - 1
    if g.bound != EXACT:
        for lam in f.terms:
            n = sum(lam)
            for part in set(lam):
                bound = min(bound, part * (g.bound + 1) - 1 + (n - part) * o)
    return bound


def sf_plethysm(f: SymSeries, g: SymSeries) -> SymSeries:
    """Plethysm ``f o g`` for constant-term-free ``g``.

    The coefficients of ``f`` are constants; those of ``g`` are acted on by
    Adams operations. The result bound accounts for the truncation of both
    arguments and for the lowest degree of ``g``.
    """
    if g.terms.get(()):
        raise ValueError("plethysm needs a right argument without constant term")
    # an exact bound with truncated g means f is constant, so f o g is exact
    bound = _pleth_bound(f, g)
    powers: dict[int, SymSeries] = {}
    products: dict[Partition, SymSeries] = {(): SymSeries.constant(1, bound)}

    def power_sum(k: int) -> SymSeries:
        if k not in powers:
            powers[k] = _adams_series(g, k).truncate(bound)
        return powers[k]

    def product(lam: Partition) -> SymSeries:
        # lam is sorted decreasingly; build from the shorter prefix
        if lam not in products:
            products[lam] = sf_mul(product(lam[:-1]), power_sum(lam[-1]), bound)
        return products[lam]

    o = g.min_degree()
    acc: dict[Partition, CoeffFrac] = {}
    for lam, c in f.terms.items():
        if sum(lam) * o > bound:
            continue
        for mu, d in product(lam).terms.items():
            v = c * d
            prev = acc.get(mu)
            acc[mu] = v if prev is None else prev + v
    return SymSeries({k: v for k, v in acc.items() if v}, bound, _clean=True)


# ---- plethystic exponential / logarithm of p_1 ----


@lru_cache(maxsize=None)
def sf_exp_p1(bound: int) -> SymSeries:
    """``Exp(p_1) = sum_{n>=1} h_n`` through degree ``bound``."""
    if bound < 1:
        raise ValueError("bound must be at least 1")
    out = SymSeries.zero(bound)
    for n in range(1, bound + 1):
        out = out + _h(n).truncate(bound)
    return SymSeries(out.terms, bound, _clean=True)


@lru_cache(maxsize=None)
def sf_log_p1(bound: int) -> SymSeries:
    """Plethystic inverse of ``Exp(p_1)``, solved one degree at a time."""
    if bound < 1:
        raise ValueError("bound must be at least 1")
    if bound == 1:
        return SymSeries.p(1, bound=1)
    prev = sf_log_p1(bound - 1)
    trial = SymSeries(prev.terms, bound, _clean=True)
    # Exp o trial = p_1 + (error in degree `bound`); that error is cancelled by -error
    err = sf_plethysm(sf_exp_p1(bound), trial).degree_part(bound)
    out = dict(prev.terms)
    for lam, c in err.terms.items():
        out[lam] = -c
    return SymSeries(out, bound, _clean=True)


# ---- extraction ----


def sf_extract(f: SymSeries, n: int, mode: str):
    """Read off numbers attached to the degree-``n`` part of ``f``.

    ``trivial_mult`` and ``sign_mult`` pair with ``h_n`` / ``e_n``;
    ``nonequivariant`` is ``n!`` times the ``p_1^n`` coefficient;
    ``restrict_one`` returns the series ``h_1^perp f``.
    """
    if n > f.bound:
        raise ValidityError(f"degree {n} lies beyond the truncation bound {f.bound}")
    if mode == "restrict_one":
        return h_perp(1, f)
    part = f.degree_part(n)
    if mode == "trivial_mult":
        return sum((c for c in part.terms.values()), ZERO)
    if mode == "sign_mult":
        return sum(((c if (n - len(lam)) % 2 == 0 else -c) for lam, c in part.terms.items()), ZERO)
    if mode == "nonequivariant":
        return part.terms.get((1,) * n, ZERO) * math.factorial(n)
    raise ValueError(f"unknown mode {mode!r}")
