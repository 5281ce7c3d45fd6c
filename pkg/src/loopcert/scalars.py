"""Exact scalar rings: rationals, Q[s] for a formal symbol s, and its fraction field.

Every coefficient in the package is either a ``fractions.Fraction`` or a
``SymPoly`` (polynomial in one formal symbol, e.g. ``eps`` or ``v``, with
rational coefficients).  Floats are never used.  ``RatFunc`` (quotients of
``SymPoly``) only appears inside the subspace-limit routines, where row
reduction over the field Q(eps) is needed.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

Q = Fraction


def ratstr(x: Fraction) -> str:
    """Serialize a rational as ``p`` or ``p/q`` (never a float)."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(s: str) -> Fraction:
    try:
        return Fraction(s.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"cannot parse rational from {s!r}") from exc


class SymPoly:
    """Polynomial in one formal symbol over Q, as an ascending coefficient tuple.

    Instances are immutable.  Arithmetic mixes freely with ``int`` and
    ``Fraction``; mixing two polynomials in different symbols is an error.
    """

    __slots__ = ("symbol", "coeffs")

    def __init__(self, symbol: str, coeffs) -> None:
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.symbol = symbol
        self.coeffs = tuple(cs)

    @classmethod
    def const(cls, symbol: str, c) -> "SymPoly":
        return cls(symbol, [Fraction(c)])

    @classmethod
    def gen(cls, symbol: str) -> "SymPoly":
        return cls(symbol, [0, 1])

    # -- queries ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def degree(self) -> int:
        """Degree, with deg 0 = -1 by convention."""
        return len(self.coeffs) - 1

    def valuation(self) -> int:
        """Order of vanishing at 0; the zero polynomial has valuation -1."""
        for i, c in enumerate(self.coeffs):
            if c != 0:
                return i
        return -1

    def constant_term(self) -> Fraction:
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    # -- arithmetic ------------------------------------------------------

    def _coerce(self, other) -> "SymPoly":
        if isinstance(other, SymPoly):
            if other.symbol != self.symbol:
                raise TypeError(
                    f"mixed formal symbols {self.symbol!r} and {other.symbol!r}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return SymPoly.const(self.symbol, other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        n = max(len(self.coeffs), len(o.coeffs))
        a = list(self.coeffs) + [Fraction(0)] * (n - len(self.coeffs))
        for i, c in enumerate(o.coeffs):
            a[i] += c
        return SymPoly(self.symbol, a)

    __radd__ = __add__

    def __neg__(self):
        return SymPoly(self.symbol, [-c for c in self.coeffs])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if not self.coeffs or not o.coeffs:
            return SymPoly(self.symbol, [])
        out = [Fraction(0)] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(o.coeffs):
                if b:
                    out[i + j] += a * b
        return SymPoly(self.symbol, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        r = SymPoly.const(self.symbol, 1)
        b = self
        while k:
            if k & 1:
                r = r * b
            b = b * b
            k >>= 1
        return r

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_term() == other
        if isinstance(other, SymPoly):
            return self.symbol == other.symbol and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        if self.is_constant():
            return hash(self.constant_term())
        return hash((self.symbol, self.coeffs))

    # -- structure -------------------------------------------------------

    def shift_down(self, k: int) -> "SymPoly":
        """Divide by symbol**k; requires valuation >= k."""
        if any(c != 0 for c in self.coeffs[:k]):
            raise ValueError("not divisible by the requested symbol power")
        return SymPoly(self.symbol, self.coeffs[k:])

    def truncate(self, order: int) -> "SymPoly":
        """Drop terms of degree > order."""
        return SymPoly(self.symbol, self.coeffs[: order + 1])

    def eval_at(self, value: Fraction) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def at_zero(self) -> Fraction:
        return self.constant_term()

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                parts.append(ratstr(c))
            elif i == 1:
                parts.append(f"{ratstr(c)}*{self.symbol}")
            else:
                parts.append(f"{ratstr(c)}*{self.symbol}^{i}")
        return " + ".join(parts)


Scalar = Union[Fraction, SymPoly]


def sc_is_zero(c: Scalar) -> bool:
    if isinstance(c, SymPoly):
        return c.is_zero()
    return c == 0


def sc_at_zero(c: Scalar) -> Fraction:
    """Specialize the formal symbol to 0 (identity on plain rationals)."""
    if isinstance(c, SymPoly):
        return c.at_zero()
    return Fraction(c)


def sc_str(c: Scalar) -> str:
    if isinstance(c, SymPoly):
        return f"({c!r})" if not c.is_constant() else ratstr(c.constant_term())
    return ratstr(c)


def _poly_gcd(a: SymPoly, b: SymPoly) -> SymPoly:
    """Monic gcd over Q, Euclid's algorithm."""
    sym = a.symbol
    while not b.is_zero():
        a, b = b, _poly_mod(a, b)
    if a.is_zero():
        return a
    lead = a.coeffs[-1]
    return SymPoly(sym, [c / lead for c in a.coeffs])


def _poly_divmod(a: SymPoly, b: SymPoly):
    if b.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    sym = a.symbol
    rem = list(a.coeffs)
    quot = [Fraction(0)] * max(0, len(rem) - len(b.coeffs) + 1)
    blead = b.coeffs[-1]
    for i in range(len(rem) - len(b.coeffs), -1, -1):
        c = rem[i + len(b.coeffs) - 1] / blead
        if c == 0:
            continue
        quot[i] = c
        for j, bc in enumerate(b.coeffs):
            rem[i + j] -= c * bc
    return SymPoly(sym, quot), SymPoly(sym, rem)


def _poly_mod(a: SymPoly, b: SymPoly) -> SymPoly:
    return _poly_divmod(a, b)[1]


class RatFunc:
    """Element of Q(s): a reduced quotient of two ``SymPoly`` in the same symbol."""

    __slots__ = ("num", "den")

    def __init__(self, num: SymPoly, den: SymPoly) -> None:
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            num = SymPoly(den.symbol, [])
            den = SymPoly(den.symbol, [1])
        else:
            g = _poly_gcd(num, den)
            if g.degree() > 0:
                num = _poly_divmod(num, g)[0]
                den = _poly_divmod(den, g)[0]
            lead = den.coeffs[-1]
            num = SymPoly(num.symbol, [c / lead for c in num.coeffs])
            den = SymPoly(den.symbol, [c / lead for c in den.coeffs])
        self.num = num
        self.den = den

    @classmethod
    def from_scalar(cls, c: Scalar, symbol: str) -> "RatFunc":
        if isinstance(c, SymPoly):
            return cls(c, SymPoly.const(c.symbol, 1))
        return cls(SymPoly.const(symbol, c), SymPoly.const(symbol, 1))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return not self.is_zero()

    def _coerce(self, other) -> "RatFunc":
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, (int, Fraction, SymPoly)):
            return RatFunc.from_scalar(other, self.num.symbol)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if o.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        return o / self

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        if self.den.is_constant():
            return repr(self.num)
        return f"({self.num!r})/({self.den!r})"
