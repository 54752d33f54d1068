"""Exact scalars: rationals and rational functions in ``s`` where ``q = s**2``.

Rationals are plain :class:`fractions.Fraction` values (ints are accepted
wherever a rational is expected).  :class:`LaurentFrac` holds an element of
``Q(s)`` in the canonical form ``s**k * P(s) / D(s)`` with ``P(0) != 0``,
``D(0) != 0``, ``D`` monic and ``gcd(P, D) = 1``.

>>> q = LaurentFrac.q()
>>> q * q.inverse()
LaurentFrac('1')
>>> (q - 1) / (LaurentFrac.s() - 1)
LaurentFrac('s + 1')
>>> Fraction(2, 4) + Fraction(1, 4)
Fraction(3, 4)
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Union

Poly = tuple  # dense coefficients, lowest degree first, no trailing zeros


class ScalarError(ArithmeticError):
    """Raised on field mismatch or an undefined operation."""


def _num(c):
    """Collapse integral Fractions to int; ints are much cheaper to combine."""
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def _trim(p: list) -> Poly:
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def _padd(p: Poly, r: Poly) -> Poly:
    if len(p) < len(r):
        p, r = r, p
    out = list(p)
    for i, c in enumerate(r):
        out[i] = _num(out[i] + c)
    return _trim(out)


def _psub(p: Poly, r: Poly) -> Poly:
    return _padd(p, tuple(-c for c in r))


def _pmul(p: Poly, r: Poly) -> Poly:
    if not p or not r:
        return ()
    out = [0] * (len(p) + len(r) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(r):
            out[i + j] += a * b
    return _trim([_num(c) for c in out])


def _pscale(p: Poly, c) -> Poly:
    if c == 0:
        return ()
    return tuple(_num(a * c) for a in p)


def _pdivmod(p: Poly, d: Poly) -> tuple[Poly, Poly]:
    if not d:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(p)
    lead = Fraction(d[-1])
    quo = [0] * max(len(p) - len(d) + 1, 0)
    for k in range(len(p) - len(d), -1, -1):
        c = rem[k + len(d) - 1]
        if c == 0:
            continue
        c = _num(c / lead)
        quo[k] = c
        for j, b in enumerate(d):
            rem[k + j] -= c * b
    return _trim([_num(c) for c in quo]), _trim([_num(c) for c in rem[: len(d) - 1]])


def _monic(p: Poly) -> Poly:
    lead = p[-1]
    if lead == 1:
        return p
    return tuple(_num(Fraction(c) / lead) for c in p)


def _pgcd(p: Poly, r: Poly) -> Poly:
    while r:
        p, r = r, _pdivmod(p, r)[1]
    return _monic(p) if p else ()


def _lowshift(p: Poly) -> tuple[int, Poly]:
    k = 0
    while k < len(p) and p[k] == 0:
        k += 1
    return k, p[k:]


class LaurentFrac:
    """An element of ``Q(s)``; immutable and always canonical."""

    __slots__ = ("shift", "num", "den", "_hash")

    def __init__(self, shift: int, num: Poly, den: Poly, _trusted: bool = False):
        if not _trusted:
            shift, num, den = _canonical(shift, tuple(num), tuple(den))
        self.shift = shift
        self.num = num
        self.den = den
        self._hash = None

    # constructors -----------------------------------------------------------------

    @classmethod
    def const(cls, c) -> LaurentFrac:
        c = _num(Fraction(c))
        if c == 0:
            return ZERO
        return cls(0, (c,), (1,), _trusted=True)

    @classmethod
    def s(cls, k: int = 1) -> LaurentFrac:
        """The monomial ``s**k``."""
        return cls(k, (1,), (1,), _trusted=True)

    @classmethod
    def q(cls, k: Union[int, Fraction] = 1) -> LaurentFrac:
        """``q**k`` for integer or half-integer ``k``."""
        e = Fraction(k) * 2
        if e.denominator != 1:
            raise ScalarError(f"q**{k} is not a power of s")
        return cls.s(int(e))

    @classmethod
    def from_laurent(cls, num: Mapping[int, object], den: Mapping[int, object] | None = None) -> LaurentFrac:
        """Build from sparse exponent -> coefficient maps (exponents in ``s``)."""
        den = {0: 1} if den is None else den
        n_items = {int(e): Fraction(c) for e, c in num.items() if Fraction(c) != 0}
        d_items = {int(e): Fraction(c) for e, c in den.items() if Fraction(c) != 0}
        if not d_items:
            raise ScalarError("zero denominator")
        if not n_items:
            return ZERO
        nlow, dlow = min(n_items), min(d_items)
        p = [0] * (max(n_items) - nlow + 1)
        for e, c in n_items.items():
            p[e - nlow] = _num(c)
        d = [0] * (max(d_items) - dlow + 1)
        for e, c in d_items.items():
            d[e - dlow] = _num(c)
        return cls(nlow - dlow, tuple(p), tuple(d))

    # accessors --------------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.num

    def is_const(self) -> bool:
        return self.shift == 0 and len(self.num) <= 1 and self.den == (1,)

    def const_value(self) -> Fraction:
        if not self.is_const():
            raise ScalarError(f"{self} is not a constant")
        return Fraction(self.num[0]) if self.num else Fraction(0)

    def num_map(self) -> dict[int, Fraction]:
        return {self.shift + i: Fraction(c) for i, c in enumerate(self.num) if c != 0}

    def den_map(self) -> dict[int, Fraction]:
        return {i: Fraction(c) for i, c in enumerate(self.den) if c != 0}

    # arithmetic -------------------------------------------------------------------

    def _coerce(self, other) -> LaurentFrac | None:
        if isinstance(other, LaurentFrac):
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentFrac.const(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o.num:
            return self
        if not self.num:
            return o
        m = min(self.shift, o.shift)
        a = (0,) * (self.shift - m) + self.num
        b = (0,) * (o.shift - m) + o.num
        if self.den == o.den:
            return LaurentFrac(m, _padd(a, b), self.den)
        return LaurentFrac(m, _padd(_pmul(a, o.den), _pmul(b, self.den)), _pmul(self.den, o.den))

    __radd__ = __add__

    def __neg__(self):
        if not self.num:
            return self
        return LaurentFrac(self.shift, tuple(-c for c in self.num), self.den, _trusted=True)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0 or not self.num:
                return ZERO
            return LaurentFrac(self.shift, _pscale(self.num, other), self.den, _trusted=True)
        if not isinstance(other, LaurentFrac):
            return NotImplemented
        if not self.num or not other.num:
            return ZERO
        shift = self.shift + other.shift
        if self.den == (1,) and other.den == (1,):
            return LaurentFrac(shift, _pmul(self.num, other.num), (1,), _trusted=True)
        # cross-cancel; each factor is already reduced
        p1, d2 = _cancel(self.num, other.den)
        p2, d1 = _cancel(other.num, self.den)
        return LaurentFrac(shift, _pmul(p1, p2), _pmul(d1, d2), _trusted=True)._fix_lead()

    __rmul__ = __mul__

    def _fix_lead(self) -> LaurentFrac:
        lead = self.den[-1]
        if lead == 1:
            return self
        inv = Fraction(1) / lead
        return LaurentFrac(self.shift, _pscale(self.num, inv), _pscale(self.den, inv), _trusted=True)

    def inverse(self) -> LaurentFrac:
        if not self.num:
            raise ZeroDivisionError("inverse of zero in Q(s)")
        inv = Fraction(1) / self.num[-1]
        return LaurentFrac(-self.shift, _pscale(self.den, inv), _pscale(self.num, inv), _trusted=True)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        base = self if k >= 0 else self.inverse()
        out = ONE
        for _ in range(abs(k)):
            out = out * base
        return out

    # comparison -------------------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, LaurentFrac):
            return self.shift == other.shift and self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return not self.num
            return self.is_const() and self.num[0] == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if not self.num:
                self._hash = hash(0)
            elif self.is_const():
                self._hash = hash(self.num[0])
            else:
                self._hash = hash((self.shift, self.num, self.den))
        return self._hash

    def __bool__(self):
        return bool(self.num)

    # display ----------------------------------------------------------------------

    def __str__(self):
        if not self.num:
            return "0"
        num = _fmt_laurent(self.num_map())
        if self.den == (1,):
            return num
        return f"({num})/({_fmt_laurent(self.den_map())})"

    def __repr__(self):
        return f"LaurentFrac({str(self)!r})"


def _cancel(p: Poly, d: Poly) -> tuple[Poly, Poly]:
    if d == (1,):
        return p, d
    g = _pgcd(p, d)
    if len(g) <= 1:
        return p, d
    return _pdivmod(p, g)[0], _pdivmod(d, g)[0]


def _canonical(shift: int, num: Poly, den: Poly) -> tuple[int, Poly, Poly]:
    num = _trim([_num(c) for c in num])
    den = _trim([_num(c) for c in den])
    if not den:
        raise ScalarError("zero denominator")
    if not num:
        return 0, (), (1,)
    k1, num = _lowshift(num)
    k2, den = _lowshift(den)
    shift += k1 - k2
    if len(den) > 1:
        g = _pgcd(num, den)
        if len(g) > 1:
            num = _pdivmod(num, g)[0]
            den = _pdivmod(den, g)[0]
    lead = den[-1]
    if lead != 1:
        inv = Fraction(1) / lead
        num = _pscale(num, inv)
        den = _pscale(den, inv)
    return shift, num, den


def _fmt_coef(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _fmt_laurent(terms: Mapping[int, Fraction]) -> str:
    parts = []
    for e in sorted(terms, reverse=True):
        c = terms[e]
        mono = "" if e == 0 else ("s" if e == 1 else f"s^{e}")
        mag = abs(c)
        if mono and mag == 1:
            body = mono
        elif mono:
            body = f"{_fmt_coef(mag)}*{mono}"
        else:
            body = _fmt_coef(mag)
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


ZERO = LaurentFrac(0, (), (1,), _trusted=True)
ONE = LaurentFrac(0, (1,), (1,), _trusted=True)

Scalar = Union[int, Fraction, LaurentFrac]


def canonicalize(x: LaurentFrac) -> LaurentFrac:
    """Recompute the canonical form from scratch (idempotent)."""
    return LaurentFrac.from_laurent(x.num_map(), x.den_map())


def field_of(x: Scalar) -> str:
    if isinstance(x, LaurentFrac):
        return "Q(s)"
    if isinstance(x, (int, Fraction)):
        return "Q"
    raise ScalarError(f"not a scalar: {x!r}")


def scalar_arith(x: Scalar, y: Scalar, op: str) -> Scalar:
    """Strict binary arithmetic: both operands must live in the same field."""
    fx, fy = field_of(x), field_of(y)
    if fx != fy:
        raise ScalarError(f"field mismatch: {fx} vs {fy}")
    if op == "add":
        r = x + y
    elif op == "sub":
        r = x - y
    elif op == "mul":
        r = x * y
    elif op == "div":
        if y == 0:
            raise ZeroDivisionError("division by zero")
        r = Fraction(x) / y if fx == "Q" else x / y
    else:
        raise ValueError(f"unknown op {op!r}")
    return _num(r) if fx == "Q" else r


def normalize(c: Scalar) -> Scalar:
    """Canonical in-memory representative: integral rationals become ints."""
    if isinstance(c, LaurentFrac):
        return c
    return _num(Fraction(c)) if not isinstance(c, int) else c


# serialization -------------------------------------------------------------------------


def scalar_to_json(c: Scalar):
    if isinstance(c, LaurentFrac):
        return {
            "num": {str(e): _fmt_coef(v) for e, v in sorted(c.num_map().items())},
            "den": {str(e): _fmt_coef(v) for e, v in sorted(c.den_map().items())},
        }
    c = Fraction(c)
    return f"{c.numerator}/{c.denominator}"


def scalar_from_json(obj) -> Scalar:
    if isinstance(obj, dict):
        if "num" not in obj:
            raise ScalarError(f"bad Laurent fraction: {obj!r}")
        return LaurentFrac.from_laurent(obj["num"], obj.get("den", {"0": "1"}))
    if isinstance(obj, (int, str)):
        try:
            return _num(Fraction(obj))
        except (ValueError, ZeroDivisionError) as exc:
            raise ScalarError(f"bad rational: {obj!r}") from exc
    raise ScalarError(f"bad scalar: {obj!r}")


def scalar_str(c: Scalar) -> str:
    """Short human-readable form, also used in reports."""
    if isinstance(c, LaurentFrac):
        return str(c)
    return _fmt_coef(Fraction(c))
