"""Exact coefficients: polynomials in the Lefschetz class L (plus opaque
cusp-form symbols S12, S16, ...) and fractions whose denominators are
polynomials in L alone.

Monomials are exponent tuples aligned with the global symbol registry
``SYMBOLS`` (index 0 is always ``L``), with trailing zeros stripped and a
minimum length of one, so ``(0,)`` is the constant monomial and ``(3,)`` is
``L^3``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Union

__all__ = [
    "SYMBOLS",
    "register_symbol",
    "MPoly",
    "CoeffFrac",
    "ZERO",
    "ONE",
    "L",
    "as_coeff",
    "cf_arith",
    "cf_is_polynomial",
    "cf_as_polynomial",
    "cf_adams",
    "cf_specialize",
    "proj_space",
    "parse_coeff",
    "format_poly",
    "format_coeff",
    "L_power",
    "NotAPolynomialError",
    "SpecializationError",
]

SYMBOLS: list[str] = ["L"]
_SYMBOL_INDEX: dict[str, int] = {"L": 0}


def register_symbol(name: str) -> int:
    """Return the registry index of ``name``, registering it if new."""
    idx = _SYMBOL_INDEX.get(name)
    if idx is None:
        if not re.fullmatch(r"S\d+(\^\(\d+\))?", name):
            raise ValueError(f"not a motive symbol: {name!r}")
        idx = len(SYMBOLS)
        SYMBOLS.append(name)
        _SYMBOL_INDEX[name] = idx
    return idx


for _w in (12, 16, 18, 20, 22, 24, 26):
    register_symbol(f"S{_w}")


class NotAPolynomialError(ArithmeticError):
    """Raised when a fraction is asked for as a polynomial; carries the remainder."""

    def __init__(self, value: "CoeffFrac", remainder: "MPoly"):
        super().__init__(f"{value} is not a polynomial (remainder {remainder})")
        self.value = value
        self.remainder = remainder


class SpecializationError(ArithmeticError):
    pass


def _strip(mono: tuple) -> tuple:
    n = len(mono)
    while n > 1 and mono[n - 1] == 0:
        n -= 1
    return mono if n == len(mono) else mono[:n]


def _mono_mul(a: tuple, b: tuple) -> tuple:
    if len(a) == 1 and len(b) == 1:
        return (a[0] + b[0],)
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, e in enumerate(b):
        out[i] += e
    return tuple(out)


def _sort_key(mono: tuple):
    # total degree, then lexicographic
    return (sum(mono), mono)


class MPoly:
    """Sparse polynomial with :class:`~fractions.Fraction` coefficients."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[tuple, Fraction] | None = None, *, _clean: bool = False):
        if terms is None:
            self.terms: dict[tuple, Fraction] = {}
        elif _clean:
            self.terms = dict(terms)
        else:
            acc: dict[tuple, Fraction] = {}
            for mono, c in terms.items():
                mono = _strip(tuple(int(e) for e in mono)) if mono else (0,)
                if any(e < 0 for e in mono):
                    raise ValueError("negative exponent")
                c = Fraction(c)
                if c:
                    acc[mono] = acc.get(mono, 0) + c
            self.terms = {m: c for m, c in acc.items() if c}
        self._hash = None

    # construction helpers
    @classmethod
    def const(cls, c) -> "MPoly":
        c = Fraction(c)
        return cls({(0,): c}, _clean=True) if c else cls()

    @classmethod
    def monomial(cls, mono: tuple, c=1) -> "MPoly":
        return cls({mono: c})

    @classmethod
    def from_L_coeffs(cls, coeffs: Iterable) -> "MPoly":
        """Build ``sum(c_k L^k)`` from a dense coefficient list."""
        return cls({(k,): Fraction(c) for k, c in enumerate(coeffs) if c}, _clean=True)

    # predicates
    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and (0,) in self.terms)

    def is_L_only(self) -> bool:
        return all(len(m) == 1 for m in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get((0,), Fraction(0))

    def symbols_used(self) -> set[str]:
        used = set()
        for m in self.terms:
            for i, e in enumerate(m):
                if e:
                    used.add(SYMBOLS[i])
        return used

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.terms.values())

    # arithmetic
    def __add__(self, other: "MPoly") -> "MPoly":
        if not isinstance(other, MPoly):
            other = MPoly.const(other)
        if not other.terms:
            return self
        if not self.terms:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m)
            if v is None:
                out[m] = c
            else:
                v += c
                if v:
                    out[m] = v
                else:
                    del out[m]
        return MPoly(out, _clean=True)

    __radd__ = __add__

    def __neg__(self) -> "MPoly":
        return MPoly({m: -c for m, c in self.terms.items()}, _clean=True)

    def __sub__(self, other: "MPoly") -> "MPoly":
        if not isinstance(other, MPoly):
            other = MPoly.const(other)
        return self + (-other)

    def __rsub__(self, other) -> "MPoly":
        return MPoly.const(other) - self

    def __mul__(self, other: "MPoly") -> "MPoly":
        if not isinstance(other, MPoly):
            c = Fraction(other)
            if not c:
                return MPoly()
            return MPoly({m: v * c for m, v in self.terms.items()}, _clean=True)
        if not self.terms or not other.terms:
            return MPoly()
        out: dict[tuple, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return MPoly({m: c for m, c in out.items() if c}, _clean=True)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "MPoly":
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = MPoly.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, MPoly):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == MPoly.const(other).terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    # structure
    def L_degree(self) -> int:
        """Degree in L (-1 for the zero polynomial)."""
        return max((m[0] for m in self.terms), default=-1)

    def leading(self) -> tuple[tuple, Fraction]:
        mono = max(self.terms, key=_sort_key)
        return mono, self.terms[mono]

    def dense_L(self) -> list[Fraction]:
        """Dense coefficient list in L; requires an L-only polynomial."""
        if not self.is_L_only():
            raise ValueError("polynomial involves motive symbols")
        out = [Fraction(0)] * (self.L_degree() + 1)
        for (k,), c in self.terms.items():
            out[k] = c
        return out

    def split_by_symbols(self) -> dict[tuple, list[Fraction]]:
        """Group terms by their S-part; each group is a dense list in L."""
        groups: dict[tuple, dict[int, Fraction]] = {}
        for m, c in self.terms.items():
            groups.setdefault(m[1:], {})[m[0]] = c
        out = {}
        for s, d in groups.items():
            dense = [Fraction(0)] * (max(d) + 1)
            for k, c in d.items():
                dense[k] = c
            out[s] = dense
        return out

    @classmethod
    def join_by_symbols(cls, groups: Mapping[tuple, list]) -> "MPoly":
        terms = {}
        for s, dense in groups.items():
            for k, c in enumerate(dense):
                if c:
                    terms[_strip((k,) + tuple(s))] = Fraction(c)
        return cls(terms, _clean=True)

    def adams(self, k: int) -> "MPoly":
        if k == 1:
            return self
        out: dict[tuple, Fraction] = {}
        for m, c in self.terms.items():
            if len(m) == 1:
                nm = (m[0] * k,)
            else:
                exps = [m[0] * k] + [0] * (len(SYMBOLS) - 1)
                for i, e in enumerate(m[1:], start=1):
                    if e:
                        exps[register_symbol(_adams_symbol(SYMBOLS[i], k))] += e
                nm = _strip(tuple(exps))
            out[nm] = out.get(nm, 0) + c
        return MPoly({m: c for m, c in out.items() if c}, _clean=True)

    def evaluate_L(self, value) -> Fraction:
        if not self.is_L_only():
            raise SpecializationError(f"cannot specialize motive symbols {sorted(self.symbols_used())}")
        value = Fraction(value)
        total = Fraction(0)
        for (k,), c in self.terms.items():
            total += c * value**k
        return total

    def __repr__(self) -> str:
        return f"MPoly({format_poly(self)})"

    def __str__(self) -> str:
        return format_poly(self)


def _adams_symbol(name: str, k: int) -> str:
    m = re.fullmatch(r"(S\d+)(?:\^\((\d+)\))?", name)
    base, prev = m.group(1), int(m.group(2) or 1)
    return f"{base}^({prev * k})"


# ---- univariate helpers (dense lists over Q, index = power of L) ----


def _trim(a: list) -> list:
    while a and not a[-1]:
        a.pop()
    return a


def _divmod_dense(a: list, b: list) -> tuple[list, list]:
    a = _trim(list(a))
    b = _trim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        return [], a
    q = [Fraction(0)] * (len(a) - len(b) + 1)
    inv = 1 / Fraction(b[-1])
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1] * inv
        q[i] = c
        if c:
            for j, bj in enumerate(b):
                a[i + j] -= c * bj
    return _trim(q), _trim(a[: len(b) - 1])


def _gcd_dense(a: list, b: list) -> list:
    a = _trim(list(a))
    b = _trim(list(b))
    while b:
        _, r = _divmod_dense(a, b)
        a, b = b, r
    if not a:
        return []
    lead = a[-1]
    return [c / lead for c in a]


def _mul_dense(a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _monic_L(p: MPoly) -> MPoly:
    """Scale an L-only polynomial to leading coefficient 1."""
    _, c = p.leading()
    return p if c == 1 else p * (1 / c)


# ---- fractions ----

_ONE_POLY = MPoly.const(1)


class CoeffFrac:
    """Reduced fraction ``num/den`` with ``den`` a monic polynomial in L."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: MPoly, den: MPoly | None = None, *, _reduced: bool = False):
        if den is None or (_reduced and den.terms == _ONE_POLY.terms):
            self.num, self.den = num, _ONE_POLY
            self._hash = None
            return
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not den.is_L_only():
            raise ValueError("denominator may only involve L")
        if _reduced:
            self.num, self.den = num, den
        else:
            self.num, self.den = _reduce(num, den)
        self._hash = None

    @classmethod
    def from_poly(cls, p: MPoly) -> "CoeffFrac":
        return cls(p, None)

    @classmethod
    def const(cls, c) -> "CoeffFrac":
        return cls(MPoly.const(c))

    # predicates
    def __bool__(self) -> bool:
        return bool(self.num)

    def is_zero(self) -> bool:
        return not self.num

    def is_polynomial(self) -> bool:
        return self.den.terms == _ONE_POLY.terms

    def is_constant(self) -> bool:
        return self.is_polynomial() and self.num.is_constant()

    def symbols_used(self) -> set[str]:
        return self.num.symbols_used()

    # arithmetic
    def __add__(self, other) -> "CoeffFrac":
        other = as_coeff(other)
        if not other.num:
            return self
        if not self.num:
            return other
        if self.is_polynomial() and other.is_polynomial():
            return CoeffFrac(self.num + other.num)
        if self.den == other.den:
            return CoeffFrac(self.num + other.num, self.den)
        return CoeffFrac(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "CoeffFrac":
        return CoeffFrac(-self.num, self.den, _reduced=True)

    def __sub__(self, other) -> "CoeffFrac":
        return self + (-as_coeff(other))

    def __rsub__(self, other) -> "CoeffFrac":
        return as_coeff(other) - self

    def __mul__(self, other) -> "CoeffFrac":
        if isinstance(other, (int, Fraction)):
            if not other:
                return ZERO
            return CoeffFrac(self.num * other, self.den, _reduced=True)
        other = as_coeff(other)
        if not self.num or not other.num:
            return ZERO
        if self.is_polynomial() and other.is_polynomial():
            return CoeffFrac(self.num * other.num)
        return CoeffFrac(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "CoeffFrac":
        other = as_coeff(other)
        if not other.num:
            raise ZeroDivisionError("division by zero coefficient")
        if not other.num.is_L_only():
            raise ValueError("cannot divide by an expression involving motive symbols")
        return CoeffFrac(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other) -> "CoeffFrac":
        return as_coeff(other) / self

    def __pow__(self, k: int) -> "CoeffFrac":
        if k < 0:
            return ONE / (self ** (-k))
        return CoeffFrac(self.num**k, self.den**k, _reduced=True) if not self.is_polynomial() else CoeffFrac(self.num**k)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, MPoly)):
            other = as_coeff(other)
        if not isinstance(other, CoeffFrac):
            return NotImplemented
        return self.num.terms == other.num.terms and self.den.terms == other.den.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def adams(self, k: int) -> "CoeffFrac":
        if k == 1 or self.num.is_constant() and self.is_polynomial():
            return self
        # L -> L^k keeps den monic and, being injective, keeps the fraction reduced
        return CoeffFrac(self.num.adams(k), self.den.adams(k), _reduced=True)

    def __repr__(self) -> str:
        return f"CoeffFrac({self})"

    def __str__(self) -> str:
        if self.is_polynomial():
            return format_poly(self.num)
        return f"({format_poly(self.num)})/({format_poly(self.den)})"

    def to_json(self) -> dict:
        def enc(p: MPoly):
            width = max((len(m) for m in p.terms), default=1)
            rows = []
            for m in sorted(p.terms, key=_sort_key, reverse=True):
                c = p.terms[m]
                rows.append([list(m) + [0] * (width - len(m)), f"{c.numerator}/{c.denominator}"])
            return rows

        out = {"num": enc(self.num), "den": enc(self.den)}
        used = sorted(self.symbols_used() - {"L"}, key=_SYMBOL_INDEX.get)
        if used:
            out["symbols"] = SYMBOLS[: 1 + max(_SYMBOL_INDEX[s] for s in used)]
        return out

    @classmethod
    def from_json(cls, data: Mapping) -> "CoeffFrac":
        symbols = data.get("symbols", ["L"])
        index = [register_symbol(s) if s != "L" else 0 for s in symbols]

        def dec(rows):
            terms = {}
            for exps, c in rows:
                mono = [0] * (max(index) + 1 if index else 1)
                for pos, e in enumerate(exps):
                    if e:
                        mono[index[pos]] += e
                terms[tuple(mono)] = Fraction(c)
            return MPoly(terms)

        return cls(dec(data["num"]), dec(data["den"]))


def _reduce(num: MPoly, den: MPoly) -> tuple[MPoly, MPoly]:
    if not num:
        return MPoly(), _ONE_POLY
    if den.is_constant():
        return num * (1 / den.constant_term()), _ONE_POLY
    den_dense = den.dense_L()
    if num.is_L_only():
        g = _gcd_dense(num.dense_L(), den_dense)
    else:
        g = den_dense
        for dense in num.split_by_symbols().values():
            g = _gcd_dense(g, dense)
            if len(g) == 1:
                break
    if len(g) > 1:
        if num.is_L_only():
            num = MPoly.from_L_coeffs(_divmod_dense(num.dense_L(), g)[0])
        else:
            num = MPoly.join_by_symbols(
                {s: _divmod_dense(d, g)[0] for s, d in num.split_by_symbols().items()}
            )
        den = MPoly.from_L_coeffs(_divmod_dense(den_dense, g)[0])
    lead = den.leading()[1]
    if lead != 1:
        inv = 1 / lead
        num, den = num * inv, den * inv
    if den.is_constant():
        return num, _ONE_POLY
    return num, den


CoeffLike = Union[CoeffFrac, MPoly, int, Fraction]


def as_coeff(x: CoeffLike) -> CoeffFrac:
    if isinstance(x, CoeffFrac):
        return x
    if isinstance(x, MPoly):
        return CoeffFrac(x)
    if isinstance(x, (int, Fraction)):
        return CoeffFrac(MPoly.const(x))
    if isinstance(x, str):
        return parse_coeff(x)
    raise TypeError(f"cannot interpret {type(x).__name__} as a coefficient")


ZERO = CoeffFrac(MPoly())
ONE = CoeffFrac(MPoly.const(1))
L = CoeffFrac(MPoly({(1,): Fraction(1)}, _clean=True))


def L_power(k: int) -> CoeffFrac:
    return CoeffFrac(MPoly({(k,): Fraction(1)}, _clean=True))


def proj_space(r: int) -> CoeffFrac:
    """Serre characteristic ``1 + L + ... + L^r`` of P^r (zero for r < 0)."""
    return CoeffFrac(MPoly({(k,): Fraction(1) for k in range(r + 1)}, _clean=True))


# ---- public operations ----


def cf_arith(a: CoeffLike, b: CoeffLike, op: str) -> CoeffFrac:
    a, b = as_coeff(a), as_coeff(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown op {op!r}")


def cf_is_polynomial(a: CoeffLike) -> bool:
    return as_coeff(a).is_polynomial()


def cf_as_polynomial(a: CoeffLike) -> MPoly:
    a = as_coeff(a)
    if a.is_polynomial():
        return a.num
    groups = a.num.split_by_symbols()
    den = a.den.dense_L()
    rem = MPoly.join_by_symbols({s: _divmod_dense(d, den)[1] for s, d in groups.items()})
    raise NotAPolynomialError(a, rem)


def cf_adams(a: CoeffLike, k: int) -> CoeffFrac:
    if k < 1:
        raise ValueError("Adams operations are indexed by k >= 1")
    return as_coeff(a).adams(k)


def cf_specialize(a: CoeffLike, value):
    """Substitute a number for L, or ``L -> u*v`` when ``value`` is a pair.

    A number gives a :class:`~fractions.Fraction`. A pair ``(u, v)`` of the
    strings ``"u", "v"`` (or any 2-tuple) gives a dict ``{(p, q): coeff}``
    for the bivariate polynomial; that case needs an honest polynomial.
    """
    a = as_coeff(a)
    if a.symbols_used() - {"L"}:
        raise SpecializationError(f"cannot specialize motive symbols {sorted(a.symbols_used() - {'L'})}")
    if isinstance(value, tuple):
        if not a.is_polynomial():
            raise SpecializationError("L -> uv needs a polynomial in L")
        return {(k, k): c for (k,), c in sorted(a.num.terms.items())}
    den = a.den.evaluate_L(value)
    if den == 0:
        raise SpecializationError(f"pole at L = {value}")
    return a.num.evaluate_L(value) / den


# ---- formatting and parsing ----


def _format_coeff_mono(c: Fraction, mono: tuple, *, latex: bool) -> tuple[str, str]:
    sign = "-" if c < 0 else "+"
    c = abs(c)
    parts = []
    for i, e in enumerate(mono):
        if not e:
            continue
        name = SYMBOLS[i]
        if latex:
            name = r"\mathbb{L}" if name == "L" else name
            parts.append(name if e == 1 else f"{name}^{{{e}}}")
        else:
            parts.append(name if e == 1 else f"{name}^{e}")
    body = "*".join(parts) if not latex else " ".join(parts)
    if not parts:
        cs = str(c.numerator) if c.denominator == 1 else (
            rf"\frac{{{c.numerator}}}{{{c.denominator}}}" if latex else f"{c.numerator}/{c.denominator}")
        return sign, cs
    if c == 1:
        return sign, body
    if c.denominator == 1:
        return sign, f"{c.numerator}{body}"
    if latex:
        return sign, rf"\frac{{{c.numerator}}}{{{c.denominator}}}{body}"
    return sign, f"({c.numerator}/{c.denominator}){body}"


def format_poly(p: MPoly, *, latex: bool = False) -> str:
    """Render with descending powers, e.g. ``L^10+2L^9-L``."""
    if not p.terms:
        return "0"
    pieces = []
    for mono in sorted(p.terms, key=_sort_key, reverse=True):
        sign, body = _format_coeff_mono(p.terms[mono], mono, latex=latex)
        pieces.append((sign, body))
    out = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
    joiner = " {} " if latex else "{}"
    for sign, body in pieces[1:]:
        out += joiner.format(sign) + body
    return out


def format_coeff(a: CoeffFrac, *, latex: bool = False) -> str:
    if a.is_polynomial():
        return format_poly(a.num, latex=latex)
    if latex:
        return rf"\frac{{{format_poly(a.num, latex=True)}}}{{{format_poly(a.den, latex=True)}}}"
    return str(a)


_TOKEN = re.compile(r"\s*(?:(\d+)|(S\d+(?:\^\(\d+\))?|L|𝕃)|(\*\*|[-+*/^()]))")


class _Parser:
    def __init__(self, text: str):
        self.tokens = []
        pos = 0
        text = text.strip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                raise ValueError(f"cannot parse {text!r} at position {pos}")
            num, sym, op = m.groups()
            if num is not None:
                self.tokens.append(("num", int(num)))
            elif sym is not None:
                self.tokens.append(("sym", "L" if sym == "𝕃" else sym))
            else:
                self.tokens.append(("op", "^" if op == "**" else op))
            pos = m.end()
            while pos < len(text) and text[pos].isspace():
                pos += 1
        self.i = 0
        self.text = text

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def parse(self) -> CoeffFrac:
        if not self.tokens:
            raise ValueError("empty expression")
        val = self.expr()
        if self.i != len(self.tokens):
            raise ValueError(f"trailing input in {self.text!r}")
        return val

    def expr(self) -> CoeffFrac:
        kind, val = self.peek()
        sign = 1
        if kind == "op" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        acc = self.term() * sign
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                t = self.term()
                acc = acc + t if val == "+" else acc - t
            else:
                return acc

    def term(self) -> CoeffFrac:
        acc = self.power()
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "*/":
                self.take()
                rhs = self.power()
                acc = acc * rhs if val == "*" else acc / rhs
            elif kind in ("num", "sym") or (kind == "op" and val == "("):
                acc = acc * self.power()  # juxtaposition, e.g. 2L^3
            else:
                return acc

    def power(self) -> CoeffFrac:
        base = self.atom()
        kind, val = self.peek()
        if kind == "op" and val == "^":
            self.take()
            k, e = self.take()
            if k != "num":
                raise ValueError("exponent must be a nonnegative integer")
            return base**e
        return base

    def atom(self) -> CoeffFrac:
        kind, val = self.take()
        if kind == "num":
            return CoeffFrac.const(val)
        if kind == "sym":
            idx = register_symbol(val) if val != "L" else 0
            mono = tuple([0] * idx + [1])
            return CoeffFrac(MPoly({mono: 1}))
        if kind == "op" and val == "(":
            inner = self.expr()
            k2, v2 = self.take()
            if (k2, v2) != ("op", ")"):
                raise ValueError("unbalanced parenthesis")
            return inner
        if kind == "op" and val == "-":
            return -self.power()
        raise ValueError(f"unexpected token {val!r}")


def parse_coeff(text: str) -> CoeffFrac:
    """Parse expressions like ``"L^3 - 2*L + 1"``, ``"(1/2)*L^2"``, ``"2L^9"``."""
    return _Parser(text).parse()
