"""Slow, independent re-implementations used to test the engine.

Nothing here calls the engine's multiplication, skewing, plethysm or Schur
code. Each oracle refuses inputs it cannot represent faithfully instead of
truncating silently.
"""

from __future__ import annotations

import math
import random
import time
from collections import Counter
from fractions import Fraction
from functools import lru_cache

from .coeffs import ZERO, CoeffFrac, MPoly, as_coeff
from .qseries import QSeries, qs_expD
from .symfunc import (
    EXACT,
    SymSeries,
    basis_to_p,
    partitions_of,
    sf_exp_p1,
    sf_log_p1,
    sf_plethysm,
    sf_skew,
    z,
)

__all__ = [
    "OracleRefusal",
    "FinVarPoly",
    "plethysm_oracle",
    "schur_jt_oracle",
    "expD_oracle",
    "skew_oracle",
    "random_coeff",
    "random_symseries",
    "random_qseries",
    "IDENTITIES",
    "identity_suite",
]


class OracleRefusal(ValueError):
    """The oracle's precondition fails; it will not approximate."""


# ---- polynomials in finitely many variables ----


class FinVarPoly:
    """Polynomial in ``x_1..x_N`` with rational coefficients, truncated above ``top``."""

    __slots__ = ("n", "top", "terms")

    def __init__(self, n: int, top: int, terms: dict | None = None):
        self.n, self.top = n, top
        self.terms = {e: c for e, c in (terms or {}).items() if c and sum(e) <= top}

    @classmethod
    def one(cls, n, top):
        return cls(n, top, {(0,) * n: Fraction(1)})

    @classmethod
    def power_sum(cls, n, top, k):
        return cls(n, top, {tuple(k if j == i else 0 for j in range(n)): Fraction(1) for i in range(n)})

    def __add__(self, other):
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return FinVarPoly(self.n, self.top, out)

    def scale(self, c):
        return FinVarPoly(self.n, self.top, {e: c * v for e, v in self.terms.items()})

    def __mul__(self, other):
        out: dict = {}
        for ea, ca in self.terms.items():
            da = sum(ea)
            for eb, cb in other.terms.items():
                if da + sum(eb) > self.top:
                    continue
                e = tuple(x + y for x, y in zip(ea, eb))
                out[e] = out.get(e, 0) + ca * cb
        return FinVarPoly(self.n, self.top, out)

    def substitute_powers(self, k):
        """``P(x_1^k, ..., x_N^k)``."""
        return FinVarPoly(self.n, self.top, {tuple(k * x for x in e): c for e, c in self.terms.items()})


def _fin_power_sums(f: SymSeries, n: int, top: int, fn) -> FinVarPoly:
    acc = FinVarPoly(n, top)
    for lam, c in f.terms.items():
        term = FinVarPoly.one(n, top)
        for k in lam:
            term = term * fn(k)
        acc = acc + term.scale(c)
    return acc


@lru_cache(maxsize=None)
def _m_to_p(deg: int) -> dict:
    """``m_lam`` in the power-sum basis, by inverting the ``p -> x^lam`` matrix."""
    parts = partitions_of(deg)
    idx = {lam: i for i, lam in enumerate(parts)}
    size = len(parts)
    nv = max(deg, 1)
    mat = [[Fraction(0)] * size for _ in parts]
    for i, mu in enumerate(parts):
        poly = FinVarPoly.one(nv, deg)
        for k in mu:
            poly = poly * FinVarPoly.power_sum(nv, deg, k)
        for lam in parts:
            mat[i][idx[lam]] = poly.terms.get(tuple(lam) + (0,) * (nv - len(lam)), Fraction(0))
    inv = _invert(mat)
    # p = A m  =>  m = A^{-1} p
    return {lam: {mu: inv[idx[lam]][i] for i, mu in enumerate(parts) if inv[idx[lam]][i]} for lam in parts}


def _invert(mat):
    n = len(mat)
    aug = [row[:] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(mat)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        aug[col] = [v / pv for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def _to_p(poly: FinVarPoly) -> dict:
    out: dict = {}
    for e, c in poly.terms.items():
        if list(e) != sorted(e, reverse=True):
            continue
        lam = tuple(x for x in e if x)
        if not lam:
            out[()] = out.get((), 0) + c
            continue
        for mu, v in _m_to_p(sum(lam))[lam].items():
            out[mu] = out.get(mu, 0) + c * v
    return out


def plethysm_oracle(f: SymSeries, g: SymSeries, N: int) -> SymSeries:
    """``f o g`` by evaluation in ``N`` variables; ``g`` must have rational coefficients."""
    if not (f.is_exact() and g.is_exact()):
        raise OracleRefusal("oracle plethysm needs exact inputs")
    if () in g.terms:
        raise OracleRefusal("g must have zero constant term")
    need = max(f.max_degree(), 0) * max(g.max_degree(), 0)
    if N < need:
        raise OracleRefusal(f"N={N} cannot represent degree {need} faithfully")
    gq = {}
    for lam, c in g.terms.items():
        if not c.is_constant():
            raise OracleRefusal("g must have rational coefficients")
        gq[lam] = c.num.constant_term()
    n = max(N, 1)
    G = _fin_power_sums(SymSeries(gq), n, need, lambda k: FinVarPoly.power_sum(n, need, k))
    terms: dict = {}
    for lam, c in f.terms.items():
        term = FinVarPoly.one(n, need)
        for k in lam:
            term = term * G.substitute_powers(k)
        for mu, v in _to_p(term).items():
            terms[mu] = terms.get(mu, ZERO) + c * v
    return SymSeries(terms)


# ---- Schur functions by Jacobi-Trudi ----


def _pmul(a: dict, b: dict) -> dict:
    out: dict = {}
    for la, ca in a.items():
        for lb, cb in b.items():
            lam = tuple(sorted(la + lb, reverse=True))
            out[lam] = out.get(lam, 0) + ca * cb
    return {k: v for k, v in out.items() if v}


@lru_cache(maxsize=None)
def _h_newton(n: int) -> tuple:
    """``n h_n = sum_k p_k h_{n-k}``."""
    if n < 0:
        return ()
    if n == 0:
        return (((), Fraction(1)),)
    acc: dict = {}
    for k in range(1, n + 1):
        for lam, c in _pmul({(k,): Fraction(1)}, dict(_h_newton(n - k))).items():
            acc[lam] = acc.get(lam, 0) + c / n
    return tuple(acc.items())


def schur_jt_oracle(lam) -> SymSeries:
    """``s_lam = det(h_{lam_i - i + j})`` by Laplace expansion along rows."""
    lam = tuple(x for x in lam if x)
    m = len(lam)

    @lru_cache(maxsize=None)
    def minor(row: int, cols: frozenset) -> tuple:
        if row == m:
            return (((), Fraction(1)),)
        acc: dict = {}
        for pos, j in enumerate(sorted(cols)):
            k = lam[row] - row + j
            if k < 0:
                continue
            sub = _pmul(dict(_h_newton(k)), dict(minor(row + 1, cols - {j})))
            sign = -1 if pos % 2 else 1
            for mu, c in sub.items():
                acc[mu] = acc.get(mu, 0) + sign * c
        return tuple((k, v) for k, v in acc.items() if v)

    return SymSeries(dict(minor(0, frozenset(range(m)))))


# ---- exp(D) as an operator exponential ----


def _D(cells: dict) -> dict:
    """``D = sum_d d/dp_d * q^d`` on ``{(lam, qdeg): coeff}``."""
    out: dict = {}
    for (lam, e), c in cells.items():
        counts = Counter(lam)
        for d, mult in counts.items():
            rest = list(lam)
            rest.remove(d)
            key = (tuple(rest), e + d)
            out[key] = out.get(key, ZERO) + c * mult
    return out


def expD_oracle(F: QSeries, J: int) -> QSeries:
    """``sum_{j <= J} D^j / j!`` applied to an exact ``F``."""
    if any(v != EXACT for v in F.validity):
        raise OracleRefusal("expD oracle needs an exact q-series")
    deg = max([c.max_degree() for c in F.coeffs] + [0])
    if J < deg:
        raise OracleRefusal(f"J={J} is below the symmetric degree {deg}; D^j would be truncated")
    cells = {(lam, d): c for d, co in enumerate(F.coeffs) for lam, c in co.terms.items()}
    acc = dict(cells)
    cur = cells
    for j in range(1, J + 1):
        cur = _D(cur)
        for key, c in cur.items():
            acc[key] = acc.get(key, ZERO) + c / math.factorial(j)
    coeffs = [dict() for _ in range(F.d_max + 1)]
    for (lam, e), c in acc.items():
        if e <= F.d_max:
            coeffs[e][lam] = c
    return QSeries([SymSeries(t) for t in coeffs])


# ---- skewing by adjointness ----


def skew_oracle(f: SymSeries, g: SymSeries) -> SymSeries:
    """The unique ``s`` with ``<s, p_mu> = <g, f p_mu>`` for all ``mu``."""
    if not (f.is_exact() and g.is_exact()):
        raise OracleRefusal("skew oracle needs exact inputs")
    out: dict = {}
    fd = {lam: c for lam, c in f.terms.items()}
    top = g.max_degree()
    for n in range(0, top + 1):
        for mu in partitions_of(n):
            prod = {}
            for lam, c in fd.items():
                key = tuple(sorted(lam + mu, reverse=True))
                prod[key] = prod.get(key, ZERO) + c
            pairing = ZERO
            for lam, c in prod.items():
                gc = g.terms.get(lam)
                if gc is not None:
                    pairing = pairing + gc * c * z(lam)
            if pairing:
                out[mu] = pairing / z(mu)
    return SymSeries(out)


# ---- randomized identity suite ----


def random_coeff(rng: random.Random, max_L: int = 2) -> CoeffFrac:
    """A small nonzero polynomial in ``L`` with integer coefficients."""
    coeffs = [rng.randint(-2, 2) for _ in range(rng.randint(1, max_L + 1))]
    if not any(coeffs):
        coeffs[0] = 1
    return CoeffFrac(MPoly.from_L_coeffs(coeffs))


def random_symseries(rng: random.Random, max_degree: int, terms: int = 3, min_degree: int = 0,
                     rational: bool = False) -> SymSeries:
    out: dict = {}
    for _ in range(terms):
        n = rng.randint(min_degree, max_degree)
        lam = rng.choice(partitions_of(n))
        c = as_coeff(Fraction(rng.randint(-3, 3), rng.randint(1, 3))) if rational else random_coeff(rng)
        out[lam] = out.get(lam, ZERO) + c
    return SymSeries(out)


def random_qseries(rng: random.Random, d_max: int, max_degree: int) -> QSeries:
    return QSeries([random_symseries(rng, max_degree, terms=2) for _ in range(d_max + 1)])


def _check_expD_inverse(rng):
    F = random_qseries(rng, 4, 4)
    return qs_expD(qs_expD(F), -1) == F and qs_expD(qs_expD(F, -1)) == F


def _check_lemma_exp_minus_one(rng):
    F = random_qseries(rng, 4, 4)
    return qs_expD(F, 1, 1) == qs_expD(F) - F


def _check_exp_log(rng):
    bound = rng.randint(1, 8)
    f = random_symseries(rng, bound, terms=2, min_degree=1)
    there = sf_plethysm(sf_plethysm(f, sf_exp_p1(bound)), sf_log_p1(bound))
    return there.agrees_with(f, bound) and sf_plethysm(sf_exp_p1(bound), sf_log_p1(bound)) == SymSeries.p(1, bound=bound)


def _check_plethysm_assoc(rng):
    f = random_symseries(rng, 2, terms=2, min_degree=1)
    g = random_symseries(rng, 2, terms=2, min_degree=1)
    h = random_symseries(rng, 2, terms=2, min_degree=1)
    return sf_plethysm(sf_plethysm(f, g), h) == sf_plethysm(f, sf_plethysm(g, h))


def _check_plethysm_oracle(rng):
    f = random_symseries(rng, 3, terms=2, min_degree=1)
    g = random_symseries(rng, 2, terms=2, min_degree=1, rational=True)
    need = max(f.max_degree(), 0) * max(g.max_degree(), 0)
    return sf_plethysm(f, g) == plethysm_oracle(f, g, need)


def _check_skew(rng):
    f = random_symseries(rng, 4, terms=2)
    g = random_symseries(rng, 8, terms=4)
    return sf_skew(f, g) == skew_oracle(f, g)


def _check_schur(rng):
    lam = rng.choice(partitions_of(rng.randint(0, 8)))
    return basis_to_p("s", lam) == schur_jt_oracle(lam)


def _check_expD_oracle(rng):
    F = random_qseries(rng, 4, 8)
    deg = max([c.max_degree() for c in F.coeffs] + [0])
    return qs_expD(F) == expD_oracle(F, deg)


IDENTITIES = {
    "exp(D) o exp(-D) = id": _check_expD_inverse,
    "exp(D) - 1 = sum_{k>=1} h_k^perp q^k": _check_lemma_exp_minus_one,
    "Exp o Log = p_1": _check_exp_log,
    "plethysm associativity": _check_plethysm_assoc,
    "plethysm vs finite-variable oracle": _check_plethysm_oracle,
    "skew adjointness": _check_skew,
    "Schur: Murnaghan-Nakayama vs Jacobi-Trudi": _check_schur,
    "exp(D) vs operator exponential": _check_expD_oracle,
}


def identity_suite(count: int = 100, seed: int = 0, names=None) -> list[dict]:
    """Run each identity on ``count`` seeded random instances."""
    results = []
    for name, check in IDENTITIES.items():
        if names is not None and name not in names:
            continue
        rng = random.Random(f"{seed}:{name}")
        t = time.perf_counter()
        failures = [i for i in range(count) if not check(rng)]
        results.append({
            "name": name,
            "instances": count,
            "ok": not failures,
            "failures": failures[:5],
            "seconds": round(time.perf_counter() - t, 3),
        })
    return results
