"""Power series in ``q`` whose coefficients are truncated symmetric functions.

Each q-degree ``d`` carries its own validity ``v_d``: the coefficient of
``q^d`` is known exactly through symmetric degree ``v_d``. The operators
``exp(+-D)`` trade symmetric degree against q-degree, so validity is
recomputed by every operation rather than tracked globally.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .coeffs import ONE, ZERO, CoeffFrac, CoeffLike, as_coeff
from .symfunc import EXACT, SymSeries, ValidityError, _e, _h, sf_mul, sf_skew

__all__ = ["QSeries", "RationalQ", "qs_expD", "qs_rational_expand", "qs_combine"]


class QSeries:
    """Coefficients ``coeffs[0..d_max]`` with per-degree validity bounds."""

    __slots__ = ("coeffs", "validity")

    def __init__(self, coeffs: Sequence[SymSeries], validity: Sequence | None = None):
        if validity is None:
            validity = [c.bound for c in coeffs]
        if len(validity) != len(coeffs):
            raise ValueError("coeffs and validity differ in length")
        self.coeffs = tuple(c.truncate(v) for c, v in zip(coeffs, validity))
        self.validity = tuple(c.bound for c in self.coeffs)

    @property
    def d_max(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def zero(cls, d_max: int, validity=EXACT) -> "QSeries":
        return cls([SymSeries.zero(validity) for _ in range(d_max + 1)])

    @classmethod
    def constant(cls, f: SymSeries, d_max: int) -> "QSeries":
        """``f`` placed in q-degree 0; higher q-degrees are exactly zero."""
        return cls([f] + [SymSeries.zero() for _ in range(d_max)])

    def coeff(self, d: int) -> SymSeries:
        if d > self.d_max:
            raise ValidityError(f"q-degree {d} exceeds d_max={self.d_max}")
        return self.coeffs[d]

    def part(self, d: int, n: int) -> SymSeries:
        """Symmetric-degree ``n`` component of the ``q^d`` coefficient."""
        c = self.coeff(d)
        if n > c.bound:
            raise ValidityError(f"(n={n}, d={d}) lies beyond validity {c.bound}")
        return c.degree_part(n)

    def truncate(self, d_max: int) -> "QSeries":
        return QSeries(self.coeffs[: d_max + 1])

    def map(self, fn) -> "QSeries":
        return QSeries([fn(c) for c in self.coeffs])

    def __add__(self, other: "QSeries") -> "QSeries":
        return qs_combine(self, other, "add")

    def __sub__(self, other: "QSeries") -> "QSeries":
        return qs_combine(self, other, "sub")

    def __neg__(self) -> "QSeries":
        return self.map(lambda c: -c)

    def __eq__(self, other) -> bool:
        if not isinstance(other, QSeries):
            return NotImplemented
        return self.coeffs == other.coeffs

    def agrees_with(self, other: "QSeries") -> bool:
        """Equality on the region where both are valid."""
        d = min(self.d_max, other.d_max)
        return all(self.coeffs[i].agrees_with(other.coeffs[i]) for i in range(d + 1))

    def __repr__(self) -> str:
        return f"QSeries(d_max={self.d_max}, validity={list(self.validity)})"

    def to_json(self) -> dict:
        return {
            "d_max": self.d_max,
            "coeffs": [c.to_json() for c in self.coeffs],
            "validity": [None if v == EXACT else v for v in self.validity],
        }

    @classmethod
    def from_json(cls, data) -> "QSeries":
        coeffs = [SymSeries.from_json(c) for c in data["coeffs"]]
        validity = [EXACT if v is None else int(v) for v in data["validity"]]
        if len(coeffs) != int(data["d_max"]) + 1:
            raise ValueError("d_max does not match the number of coefficients")
        return cls(coeffs, validity)


def _qpoly(xs: Sequence[CoeffLike]) -> tuple[CoeffFrac, ...]:
    out = [as_coeff(x) for x in xs]
    while out and not out[-1]:
        out.pop()
    return tuple(out)


def _qmul(a: Sequence[CoeffFrac], b: Sequence[CoeffFrac]) -> tuple[CoeffFrac, ...]:
    if not a or not b:
        return ()
    out = [ZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            if y:
                out[i + j] = out[i + j] + x * y
    return _qpoly(out)


@dataclass(frozen=True)
class RationalQ:
    """``num(q) / den(q)`` with coefficient lists in increasing q-degree."""

    num: tuple
    den: tuple = (ONE,)

    def __post_init__(self):
        object.__setattr__(self, "num", _qpoly(self.num))
        object.__setattr__(self, "den", _qpoly(self.den))
        if not self.den or not self.den[0]:
            raise ZeroDivisionError("denominator has no invertible constant term")

    @classmethod
    def q_power(cls, k: int, coeff: CoeffLike = 1) -> "RationalQ":
        return cls((ZERO,) * k + (as_coeff(coeff),))

    def __mul__(self, other: "RationalQ") -> "RationalQ":
        if not isinstance(other, RationalQ):
            return RationalQ(tuple(c * as_coeff(other) for c in self.num), self.den)
        return RationalQ(_qmul(self.num, other.num), _qmul(self.den, other.den))

    def __add__(self, other: "RationalQ") -> "RationalQ":
        num = _add(_qmul(self.num, other.den), _qmul(other.num, self.den))
        return RationalQ(num, _qmul(self.den, other.den))

    def __neg__(self) -> "RationalQ":
        return RationalQ(tuple(-c for c in self.num), self.den)

    def __sub__(self, other: "RationalQ") -> "RationalQ":
        return self + (-other)

    def expand(self, d_max: int) -> list[CoeffFrac]:
        """Exact Taylor coefficients ``c_0..c_{d_max}``."""
        inv0 = ONE / self.den[0]
        out: list[CoeffFrac] = []
        for d in range(d_max + 1):
            acc = self.num[d] if d < len(self.num) else ZERO
            for j in range(1, min(d, len(self.den) - 1) + 1):
                if self.den[j]:
                    acc = acc - self.den[j] * out[d - j]
            out.append(acc * inv0)
        return out


def _add(a, b):
    n = max(len(a), len(b))
    return _qpoly([(a[i] if i < len(a) else ZERO) + (b[i] if i < len(b) else ZERO) for i in range(n)])


def qs_rational_expand(R: RationalQ, d_max: int) -> QSeries:
    """Expand ``R`` as a q-series with exact constant coefficients."""
    return QSeries([SymSeries.constant(c) for c in R.expand(d_max)])


def _op(sign: int, k: int) -> SymSeries:
    if sign == 1:
        return _h(k)
    f = _e(k)
    return f if k % 2 == 0 else -f


def qs_expD(F: QSeries, sign: int = 1, floor: int = 0) -> QSeries:
    """Apply ``exp(sign*D)`` restricted to the terms ``q^k`` with ``k >= floor``.

    ``exp(D) = sum_k h_k^perp q^k`` and ``exp(-D) = sum_k (-1)^k e_k^perp q^k``.
    With ``floor = 1`` and ``sign = 1`` this is ``E = exp(D) - 1``.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if floor < 0 or (sign == -1 and floor != 0):
        raise ValueError("floor must be 0 for exp(-D) and nonnegative otherwise")
    out = []
    for d in range(F.d_max + 1):
        acc = SymSeries.zero()
        for k in range(floor, d + 1):
            src = F.coeffs[d - k]
            if not src and src.bound == EXACT:
                continue
            term = src if k == 0 else sf_skew(_op(sign, k), src)
            acc = acc + term
        out.append(acc)
    return QSeries(out)


def qs_combine(a: QSeries, b, op: str) -> QSeries:
    """``add``, ``sub``, ``mul_scalar`` (SymSeries or CoeffFrac) or ``mul_rationalq``."""
    if op in ("add", "sub"):
        d = min(a.d_max, b.d_max)
        if op == "add":
            return QSeries([a.coeffs[i] + b.coeffs[i] for i in range(d + 1)])
        return QSeries([a.coeffs[i] - b.coeffs[i] for i in range(d + 1)])
    if op == "mul_scalar":
        if isinstance(b, SymSeries):
            return a.map(lambda c: sf_mul(c, b))
        c0 = as_coeff(b)
        return a.map(lambda c: c.scale(c0))
    if op == "mul_rationalq":
        r = b.expand(a.d_max)
        out = []
        for d in range(a.d_max + 1):
            acc = SymSeries.zero()
            for j in range(d + 1):
                if r[j]:
                    acc = acc + a.coeffs[d - j].scale(r[j])
            out.append(acc)
        return QSeries(out)
    raise ValueError(f"unknown op {op!r}")
