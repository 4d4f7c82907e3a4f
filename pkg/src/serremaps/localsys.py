"""Symplectic local systems on ``M_{1,1}`` and ``M_2`` through torus characters.

A class in the representation ring of ``GSp_{2g}`` (g = 1, 2) is stored as a
Laurent polynomial in the torus variables ``x_1..x_g`` with coefficients in
``Q[L]``; the eigenvalues of the standard representation ``V`` are
``x_i`` and ``L/x_i``. Irreducibles ``V_w`` (``w = (k,)`` or ``(l, m)``) are
read off after multiplying by the Weyl denominator.

The fibre of the universal curve has compactly supported class
``1 + L - V`` (odd cohomology enters with a minus sign), so the
Frobenius characteristic of its ``n``-th fibred power is
``sum_lam p_lam / z_lam * prod_i psi^{lam_i}(1 + L - V)``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product
from typing import Callable, Mapping

from .coeffs import CoeffFrac, MPoly
from .symfunc import SymSeries, partitions_of, z

__all__ = [
    "Laurent",
    "fiber_class",
    "adams",
    "decompose",
    "irreducible_character",
    "character_in_traces",
    "fibered_power_classes",
    "epsilon_series",
]

Laurent = dict  # exponent tuple -> MPoly in L

_Lpoly = lambda k, c=1: MPoly({(k,): Fraction(c)}, _clean=True) if c else MPoly()  # noqa: E731


def _add_into(acc: Laurent, mono: tuple, c: MPoly) -> None:
    prev = acc.get(mono)
    s = c if prev is None else prev + c
    if s:
        acc[mono] = s
    else:
        acc.pop(mono, None)


def mul(a: Laurent, b: Laurent) -> Laurent:
    out: Laurent = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            _add_into(out, tuple(x + y for x, y in zip(ea, eb)), ca * cb)
    return out


def fiber_class(g: int) -> Laurent:
    """``1 + L - V`` for the standard representation of ``GSp_{2g}``."""
    zero = (0,) * g
    out: Laurent = {zero: MPoly.const(1) + _Lpoly(1)}
    for i in range(g):
        e = tuple(1 if j == i else 0 for j in range(g))
        out[e] = MPoly.const(-1)
        out[tuple(-x for x in e)] = _Lpoly(1, -1)
    return out


def adams(a: Laurent, k: int) -> Laurent:
    return {tuple(k * x for x in e): c.adams(k) for e, c in a.items()}


# ---- Weyl group of Sp_{2g}: signed permutations, with x_i -> L/x_i ----


def _weyl_images(g: int, mu: tuple) -> list[tuple[int, tuple, int]]:
    """``(sign, exponent, L-power)`` for every ``w(x^mu)``."""
    out = []
    for perm in permutations(range(g)):
        perm_sign = _perm_sign(perm)
        for flips in product((1, -1), repeat=g):
            e = tuple(flips[i] * mu[perm[i]] for i in range(g))
            lpow = sum(mu[perm[i]] for i in range(g) if flips[i] == -1)
            sign = perm_sign * (-1) ** sum(1 for f in flips if f == -1)
            out.append((sign, e, lpow))
    return out


def _perm_sign(perm: tuple) -> int:
    sign = 1
    seen = list(perm)
    for i in range(len(seen)):
        for j in range(i + 1, len(seen)):
            if seen[i] > seen[j]:
                sign = -sign
    return sign


def _rho(g: int) -> tuple:
    return tuple(range(g, 0, -1))


@lru_cache(maxsize=None)
def _denominator(g: int) -> tuple:
    return tuple((e, _Lpoly(lp, s)) for s, e, lp in _weyl_images(g, _rho(g)))


def decompose(a: Laurent, g: int) -> dict[tuple, MPoly]:
    """Multiplicities of the irreducibles ``V_w`` in the virtual class ``a``."""
    rho = _rho(g)
    out: dict[tuple, MPoly] = {}
    for ea, ca in a.items():
        for ed, cd in _denominator(g):
            e = tuple(x + y for x, y in zip(ea, ed))
            if all(e[i] > e[i + 1] for i in range(g - 1)) and e[-1] > 0:
                w = tuple(x - r for x, r in zip(e, rho))
                prev = out.get(w)
                s = ca * cd if prev is None else prev + ca * cd
                if s:
                    out[w] = s
                else:
                    out.pop(w, None)
    return out


@lru_cache(maxsize=None)
def irreducible_character(w: tuple) -> tuple:
    """Laurent character of ``V_w`` as a sorted tuple of ``(exponent, coeff)``.

    Built by peeling highest weights off powers of the elementary classes,
    which are genuine characters of tensor constructions.
    """
    g = len(w)
    target = _monomial_product(w)
    rest = decompose(target, g)
    rest.pop(w)
    out = dict(target)
    for v, c in rest.items():
        for e, cv in irreducible_character(v):
            _add_into(out, e, -(c * cv))
    return tuple(sorted(out.items()))


def _elementary(g: int) -> list[Laurent]:
    """Characters ``e_1`` (and ``e_2``) of the eigenvalues of ``V``."""
    eigs = []
    for i in range(g):
        e = tuple(1 if j == i else 0 for j in range(g))
        eigs.append({e: MPoly.const(1)})
        eigs.append({tuple(-x for x in e): _Lpoly(1)})
    e1: Laurent = {}
    for y in eigs:
        for k, c in y.items():
            _add_into(e1, k, c)
    if g == 1:
        return [e1]
    e2: Laurent = {}
    for i in range(len(eigs)):
        for j in range(i + 1, len(eigs)):
            for k, c in mul(eigs[i], eigs[j]).items():
                _add_into(e2, k, c)
    return [e1, e2]


def _monomial_product(w: tuple) -> Laurent:
    """``e_1^{w_1 - w_2} e_2^{w_2}``, whose top weight is ``w``."""
    g = len(w)
    els = _elementary(g)
    exps = [w[0] - w[1], w[1]] if g == 2 else [w[0]]
    out: Laurent = {(0,) * g: MPoly.const(1)}
    for el, k in zip(els, exps):
        for _ in range(k):
            out = mul(out, el)
    return out


@lru_cache(maxsize=None)
def character_in_traces(w: tuple) -> tuple:
    """``chi_w`` as a polynomial in the elementary classes and ``L``.

    Returns ``((i, j), coeff)`` pairs meaning ``coeff * e_1^i * e_2^j`` (``j = 0``
    in genus one). Used to turn Frobenius traces into local-system traces.
    """
    g = len(w)
    out: dict[tuple, MPoly] = {}
    key = (w[0] - w[1], w[1]) if g == 2 else (w[0], 0)
    out[key] = MPoly.const(1)
    rest = decompose(_monomial_product(w), g)
    rest.pop(w)
    for v, c in rest.items():
        for k, cv in character_in_traces(v):
            prev = out.get(k)
            s = -(c * cv) if prev is None else prev - c * cv
            if s:
                out[k] = s
            else:
                out.pop(k, None)
    return tuple(sorted(out.items()))


def _divide_fiber(a: Laurent) -> Laurent:
    """Exact quotient by ``(1 - x)(1 - L/x)``, the genus-one fibre class."""
    # 1/(1-x): q_e = a_e + q_{e-1}, scanning exponents upward
    lo = min(e[0] for e in a)
    hi = max(e[0] for e in a)
    q1: dict[int, MPoly] = {}
    run = MPoly()
    for e in range(lo, hi + 1):
        run = run + a.get((e,), MPoly())
        if run:
            q1[e] = run
    if run:
        raise ArithmeticError("class is not divisible by 1 - x")
    # 1/(1 - L/x): r_e = q_e + L r_{e+1}, scanning downward
    out: Laurent = {}
    run = MPoly()
    Lp = _Lpoly(1)
    for e in range(hi, lo - 1, -1):
        run = q1.get(e, MPoly()) + Lp * run
        if run:
            out[(e,)] = run
    if run:
        raise ArithmeticError("class is not divisible by 1 - L/x")
    return out


def _fibered_power(g: int, lam: tuple) -> Laurent:
    fib = fiber_class(g)
    out: Laurent = {(0,) * g: MPoly.const(1)}
    parts = list(lam)
    if g == 1:
        # the quotient by the elliptic curve itself removes one fibre factor
        out = _divide_fiber(adams(fib, parts[0]))
        parts = parts[1:]
    for k in parts:
        out = mul(out, adams(fib, k))
    return out


def fibered_power_classes(g: int, n: int) -> dict[tuple, dict[tuple, MPoly]]:
    """For each ``lam |- n``, the decomposition of ``prod psi^{lam_i}`` of the fibre."""
    return {lam: decompose(_fibered_power(g, lam), g) for lam in partitions_of(n)}


def epsilon_series(g: int, bound: int, values: Callable[[tuple], CoeffFrac], start: int = 0) -> SymSeries:
    """``sum_n e^{S_n}`` of the ``n``-fold fibred power, given ``w -> e_c(M, V_w)``."""
    terms: dict[tuple, CoeffFrac] = {}
    for n in range(start, bound + 1):
        for lam, dec in fibered_power_classes(g, n).items():
            acc = CoeffFrac(MPoly())
            for w, mult in dec.items():
                acc = acc + CoeffFrac(mult) * values(w)
            if acc:
                terms[lam] = acc / z(lam)
    return SymSeries(terms, bound)
