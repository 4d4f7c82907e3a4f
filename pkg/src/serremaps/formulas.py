"""Generating functions for mapping spaces, assembled from ``a_g^eps``.

Pipeline (all q-series carry per-degree validity)::

    a_g^eps --exp_{>=2g-1}(D)--> symmetric powers --/ e(P^{g-1})--> Picard
            --rational factor--> quasimaps Q^{eps,+} --+ f_{g,r}--> exp(D) M^eps
            --exp(-D)--> M^eps --o Log(p_1)--> M

Every quantity with two independent expressions is computed both ways and a
mismatch raises :class:`CrossCheckError`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .coeffs import ONE, ZERO, CoeffFrac, L, L_power, MPoly, as_coeff, cf_specialize, proj_space
from .modulidata import InsufficientDataError
from .qseries import QSeries, RationalQ, qs_combine, qs_expD
from .symfunc import (
    EXACT,
    SymSeries,
    ValidityError,
    e_perp,
    h_perp,
    sf_log_p1,
    sf_plethysm,
)

__all__ = [
    "CrossCheckError",
    "UnsupportedGenusError",
    "ModuliParams",
    "CheckReport",
    "sym_powers_series",
    "pic_series",
    "pic_pointed",
    "pic_polynomiality",
    "cor44_identity_check",
    "q_plus_series",
    "cor49_check",
    "f_low",
    "m_eps_series",
    "m_pointed_series",
    "genus1_recursion",
    "HodgeDelignePoly",
    "hodge_deligne",
    "virtual_hodge",
    "stability_check",
    "specialization_suite",
]


class CrossCheckError(RuntimeError):
    """Two independent expressions for the same quantity disagree."""


class UnsupportedGenusError(InsufficientDataError):
    """No closed form for the low-degree polynomial ``f_{g,r}`` in this genus."""


@dataclass(frozen=True)
class ModuliParams:
    g: int
    r: int = 1
    n_max: int = 0
    d_max: int = 0

    def __post_init__(self):
        if self.g < 1 or self.r < 0 or self.n_max < 0 or self.d_max < 0:
            raise ValueError(f"invalid parameters {self}")


@dataclass
class CheckReport:
    """Outcome of a cellwise identity check over ``(n, d)``."""

    name: str
    ok: bool = True
    cells: dict = field(default_factory=dict)
    first_failure: Any = None
    notes: list = field(default_factory=list)

    def record(self, key, passed: bool) -> None:
        self.cells[key] = passed
        if not passed and self.first_failure is None:
            self.first_failure = key
            self.ok = False

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "ok": self.ok,
            "checked": len(self.cells),
            "first_failure": None if self.first_failure is None else list(self.first_failure),
            "notes": list(self.notes),
        }


def _span(bound, *series: SymSeries) -> range:
    """Symmetric degrees ``0..bound``, capped at the top degree present when exact."""
    if bound == EXACT:
        bound = max([s.max_degree() for s in series] + [0])
    return range(0, int(bound) + 1)


def _q(*coeffs) -> tuple:
    return tuple(as_coeff(c) for c in coeffs)


# ---- symmetric powers and Picard ----


def sym_powers_series(a: SymSeries, g: int, d_max: int) -> QSeries:
    """``sum_{d >= 2g-1} e^{S_n}(Sym^d_{g,eps^n}) q^d = exp_{>=2g-1}(D) a_g^eps``."""
    return qs_expD(QSeries.constant(a, d_max), 1, 2 * g - 1)


def pic_series(a: SymSeries, g: int) -> SymSeries:
    """``sum_n e^{S_n}(Pic^d_{g,eps^n}) = h_{2g-1}^perp a_g^eps / e(P^{g-1})`` (any ``d``)."""
    return h_perp(2 * g - 1, a) / proj_space(g - 1)


def pic_pointed(a: SymSeries, g: int) -> SymSeries:
    """Distinct-point version: the Picard series composed with ``Log(p_1)``."""
    pic = pic_series(a, g)
    top = pic.bound if pic.bound != EXACT else pic.max_degree()
    if top < 1:
        return pic
    return sf_plethysm(pic, sf_log_p1(int(top))).truncate(pic.bound)


def pic_polynomiality(pic: SymSeries) -> dict[int, bool]:
    """Per symmetric degree: are all coefficients polynomials in ``L``?"""
    out: dict[int, bool] = {}
    for n in _span(pic.bound, pic):
        out[n] = all(c.is_polynomial() for lam, c in pic.terms.items() if sum(lam) == n)
    return out


def _sym_from_pic_factor(g: int) -> RationalQ:
    # q^{2g-1}/(1-q) * (Lq - L^g q + L^g - 1) / ((L-1)(1-Lq))
    Lg = L_power(g)
    num = RationalQ.q_power(2 * g - 1) * RationalQ(_q(Lg - 1, L - Lg))
    den = RationalQ(_q(1), _q(1, -1)) * RationalQ(_q(1), _q(L - 1, -(L - 1) * L))
    return num * den


def cor44_identity_check(a: SymSeries, g: int, d_max: int) -> CheckReport:
    """Symmetric powers computed directly versus through the Picard series."""
    lhs = sym_powers_series(a, g, d_max)
    pic = pic_series(a, g)
    rhs = qs_combine(QSeries.constant(pic, d_max), _sym_from_pic_factor(g), "mul_rationalq")
    report = CheckReport("sym powers vs Picard")
    for d in range(d_max + 1):
        v = min(lhs.validity[d], rhs.validity[d])
        for n in _span(v, lhs.coeffs[d], rhs.coeffs[d]):
            report.record((n, d), lhs.coeffs[d].degree_part(n) == rhs.coeffs[d].degree_part(n))
    return report


# ---- quasimaps ----


def _rational_bracket(g: int, r: int) -> tuple:
    """Coefficients of ``L^{r+1} q - L^{g(r+1)} q + L^{g(r+1)} - 1``."""
    Lr, Lgr = L_power(r + 1), L_power(g * (r + 1))
    return _q(Lgr - 1, Lr - Lgr)


def q_plus_series(a: SymSeries, g: int, r: int, d_max: int) -> QSeries:
    """``Q^{eps,+}_{g,r}``, checked across its two closed forms and the termwise one."""
    Lg, Lr = L_power(g), L_power(r + 1)
    bracket = _rational_bracket(g, r)
    # first form: built on the symmetric powers
    f1 = RationalQ(_q(1, -L), _q(1, -Lr)) * RationalQ(bracket, _q(Lg - 1, L - Lg))
    first = qs_combine(sym_powers_series(a, g, d_max), f1, "mul_rationalq")
    # second form: built on h_{2g-1}^perp a directly
    top = h_perp(2 * g - 1, a) / (Lg - 1)
    f2 = RationalQ.q_power(2 * g - 1) * RationalQ(bracket, _q(1, -1)) * RationalQ(_q(1), _q(1, -Lr))
    second = qs_combine(QSeries.constant(top, d_max), f2, "mul_rationalq")
    # termwise: projective bundles of rank (r+1)(d-g+1) over Picard
    coeffs = []
    for d in range(d_max + 1):
        if d < 2 * g - 1:
            coeffs.append(SymSeries.zero())
        else:
            coeffs.append(top.scale(L_power((r + 1) * (d - g + 1)) - 1))
    termwise = QSeries(coeffs)
    if not first.agrees_with(second) or not second.agrees_with(termwise):
        raise CrossCheckError(f"closed forms of Q^+ disagree (g={g}, r={r})")
    return QSeries([first.coeffs[d].truncate(min(first.validity[d], second.validity[d])) for d in range(d_max + 1)])


def cor49_check(a: SymSeries, g: int, r: int, d_max: int) -> CheckReport:
    """``Q_{d+1} - L^{r+1} Q_d = h_{2g-1}^perp a (L^{r+1}-1)/(L^g-1)`` for ``d > 2g-2``."""
    Q = q_plus_series(a, g, r, d_max)
    Lr = L_power(r + 1)
    step = h_perp(2 * g - 1, a).scale((Lr - 1) / (L_power(g) - 1))
    report = CheckReport("first differences of Q^+")
    for d in range(2 * g - 1, d_max):
        diff = Q.coeffs[d + 1] - Q.coeffs[d].scale(Lr)
        for n in _span(min(diff.bound, step.bound), diff, step):
            report.record((n, d), diff.degree_part(n) == step.degree_part(n))
    return report


# ---- low-degree correction and mapping spaces ----


def f_low(a: SymSeries, g: int, r: int, d_max: int, pic: SymSeries | None = None) -> QSeries:
    """The polynomial ``f_{g,r}(q)`` of degree ``<= 2g-2``.

    Genus two is assembled from the strata of quasimaps of degree 1 and 2
    (``O(p)`` and the canonical bundle) and compared against the closed form.
    """
    P = proj_space(r)
    if g == 1:
        coeffs = [a.scale(P)]
    elif g == 2:
        Pbig = proj_space(2 * r + 1)
        h3 = h_perp(3, a)
        closed2 = (h3 / proj_space(g - 1) - a).scale(P) + a.scale(Pbig)
        pic = pic_series(a, g) if pic is None else pic
        strata2 = (pic - a).scale(P) + a.scale(Pbig)
        if not closed2.agrees_with(strata2):
            raise CrossCheckError("q^2 coefficient of f_{2,r}: closed form and strata disagree")
        coeffs = [a.scale(P), h_perp(1, a).scale(P), closed2]
    else:
        raise UnsupportedGenusError(
            f"f_{{{g},r}} has no closed form for g={g}; only its degree bound 2g-2 is known",
            missing="f_low",
        )
    coeffs = coeffs[: d_max + 1]
    coeffs += [SymSeries.zero() for _ in range(d_max + 1 - len(coeffs))]
    return QSeries(coeffs)


def m_eps_series(a: SymSeries, g: int, r: int, d_max: int) -> QSeries:
    """``M^eps_{g,r} = exp(-D)(f_{g,r} + Q^{eps,+}_{g,r})``."""
    total = f_low(a, g, r, d_max) + q_plus_series(a, g, r, d_max)
    return qs_expD(total, -1)


def m_pointed_series(m_eps: QSeries) -> QSeries:
    """Distinct markings: each q-coefficient composed with ``Log(p_1)``."""
    out = []
    for c in m_eps.coeffs:
        top = c.bound if c.bound != EXACT else c.max_degree()
        if top < 1:
            out.append(c)
        else:
            out.append(sf_plethysm(c, sf_log_p1(int(top))).truncate(c.bound))
    return QSeries(out)


def genus1_recursion(n: int, d: int, r: int, a: SymSeries) -> dict[str, SymSeries]:
    """``e^{S_n}(M_{1,eps^n}(P^r, d))`` by the closed sum and by the recursion in ``d``.

    For ``d = 0`` both return ``e(P^r) a_n`` (degree-zero maps are constant);
    the closed sum over ``k = 1..d-1`` covers ``d >= 1``.
    """
    if n + d <= 0:
        raise ValueError("need n + d > 0")
    if a.bound < n + d:
        raise ValidityError(f"a_1^eps known to degree {a.bound}, need {n + d}")
    P = proj_space(r)

    def part(k):
        return a.degree_part(n + k)

    if d == 0:
        base = part(0).scale(P)
        return {"closed": base, "recursive": base}
    closed = SymSeries.zero()
    for k in range(1, d):
        c = L_power((d - k) * (r + 1)) - L_power((d - k) * (r + 1) - r)
        term = e_perp(k, part(k)).scale(P * c)
        closed = closed + (term if k % 2 == 1 else -term)
    rec = SymSeries.zero()  # degree one: no maps from a genus-one curve
    for j in range(1, d):
        step = e_perp(j, part(j)).scale((L_power(r + 1) - L) * P)
        rec = rec.scale(L_power(r + 1)) + (step if j % 2 == 1 else -step)
    return {"closed": closed, "recursive": rec}


# ---- Hodge-Deligne numbers ----


@dataclass(frozen=True)
class HodgeDelignePoly:
    """``sum h^{p,q} u^p v^q`` with rational or symmetric-function coefficients."""

    terms: dict

    def coefficient(self, p: int, q: int):
        return self.terms.get((p, q), 0)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (p, q) in sorted(self.terms, reverse=True):
            c = self.terms[(p, q)]
            mono = "".join(x for x in (_uv("u", p), _uv("v", q)) if x) or "1"
            parts.append(f"({c})*{mono}" if not isinstance(c, Fraction) else f"{c}*{mono}")
        return " + ".join(parts)


def _uv(name: str, k: int) -> str:
    return "" if k == 0 else name if k == 1 else f"{name}^{k}"


def _diag(c: CoeffFrac) -> dict:
    return {pq: v for pq, v in cf_specialize(c, ("u", "v")).items() if v}


def hodge_deligne(f) -> HodgeDelignePoly:
    """Substitute ``L -> uv``; symmetric functions are handled coefficientwise."""
    if isinstance(f, SymSeries):
        acc: dict = {}
        for lam, c in f.terms.items():
            for pq, v in _diag(c).items():
                acc.setdefault(pq, {})[lam] = v
        return HodgeDelignePoly({pq: SymSeries(t) for pq, t in acc.items()})
    return HodgeDelignePoly(_diag(as_coeff(f)))


def virtual_hodge(f, p: int, q: int):
    """``h^{p,q}_vir``: coefficient of ``u^p v^q``."""
    hd = hodge_deligne(f)
    default = SymSeries.zero() if isinstance(f, SymSeries) else Fraction(0)
    return hd.terms.get((p, q), default)


# ---- checks on computed series ----


def _L_coeffs(f: SymSeries) -> dict[int, SymSeries]:
    """Split a symmetric function by powers of ``L`` (coefficients must be polynomials)."""
    out: dict[int, dict] = {}
    for lam, c in f.terms.items():
        if not c.is_polynomial():
            raise ValueError("stability is read off from polynomial classes")
        for mono, v in c.num.terms.items():
            if len(mono) > 1 and any(mono[1:]):
                raise ValueError("class contains cusp-form symbols")
            out.setdefault(mono[0], {})[lam] = Fraction(v)
    return {j: SymSeries(t) for j, t in out.items()}


def stability_check(g: int, r: int, n: int, d: int, series: QSeries) -> dict:
    """Compare ``h^{p,p}(d+1)`` with ``h^{p-r-1,p-r-1}(d)`` in symmetric degree ``n``.

    ``series`` is the pointed mapping-space series. Mismatches above the proven
    weight bound are hard failures; below it the first agreeing weight is
    reported as the empirical stable range.
    """
    lo = _L_coeffs(series.part(d, n))
    hi = _L_coeffs(series.part(d + 1, n))
    proven = 2 * ((g + 1) * (r + 3) + n + d - 4)
    improved = 2 * (2 * r + d + n + 1) if g == 1 else None
    bound = improved if improved is not None else proven
    top = max(list(hi) + [j + r + 1 for j in lo] + [0])
    mismatched = []
    for j in range(0, top + 1):
        if hi.get(j, SymSeries.zero()) != lo.get(j - r - 1, SymSeries.zero()):
            mismatched.append(2 * j)
    above = [w for w in mismatched if w > bound]
    last_bad = max(mismatched, default=-1)
    return {
        "g": g, "r": r, "n": n, "d": d,
        "proven_bound": proven,
        "improved_bound": improved,
        "holds_above_bound": not above,
        "violations_above_bound": above,
        # stabilization observed for every weight p+q > empirical_bound
        "empirical_bound": last_bad,
    }


def specialization_suite(series: QSeries, g: int, d_min: int = 1) -> dict:
    """Evaluate every valid ``(n, d)`` cell at ``L = 1`` and ``L = 0``.

    ``L = 1`` must vanish for ``d >= 1`` (hard). ``L = 0`` must vanish for
    ``g = 1, d >= 1`` (hard) and is recorded as evidence for ``g = 2``.
    """
    out = {"L=1": {}, "L=0": {}, "hard_failures": [], "observations": []}
    for d in range(series.d_max + 1):
        v = series.validity[d]
        for n in _span(v, series.coeffs[d]):
            part = series.part(d, n)
            at1 = all(cf_specialize(c, 1) == 0 for c in part.terms.values())
            at0 = all(cf_specialize(c, 0) == 0 for c in part.terms.values())
            out["L=1"][(n, d)] = at1
            out["L=0"][(n, d)] = at0
            if d >= d_min and not at1:
                out["hard_failures"].append(("L=1", n, d))
            if d >= d_min and not at0:
                (out["hard_failures"] if g == 1 else out["observations"]).append(("L=0", n, d))
    out["ok"] = not out["hard_failures"]
    return out
