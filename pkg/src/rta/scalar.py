"""Exact scalars: rationals and rational functions in one indeterminate ``q``.

Rationals are plain :class:`fractions.Fraction` values. Elements of Q(q) are
:class:`RatFunc` instances holding a coprime pair of integer polynomials with
a denominator of positive leading coefficient, so equal values always have
equal representations. Python ints and Fractions are accepted wherever a
RatFunc operand is expected (Q is a subfield of Q(q)).

The module-level functions (``add``, ``mul``, ...) are the strict interface:
they refuse to combine a rational with a rational function, which catches
accidental mixing of the two ground fields at API boundaries.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

import flint

from .errors import DivisionByZero, MixedField, PoleAtPoint, ZeroInput

Rational = Fraction


def _poly(coeffs) -> flint.fmpz_poly:
    return flint.fmpz_poly(list(coeffs))


def _lead(p: flint.fmpz_poly) -> int:
    return int(p[p.degree()])


def _trailing_order(p: flint.fmpz_poly) -> int:
    for i, c in enumerate(p.coeffs()):
        if c != 0:
            return i
    raise ZeroInput("valuation of zero")


def _poly_text(p: flint.fmpz_poly) -> str:
    coeffs = [int(c) for c in p.coeffs()]
    if not coeffs:
        return "0"
    parts: list[str] = []
    for e in range(len(coeffs) - 1, -1, -1):
        c = coeffs[e]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if e == 0:
            body = str(a)
        else:
            mono = "q" if e == 1 else f"q^{e}"
            body = mono if a == 1 else f"{a}*{mono}"
        if not parts:
            parts.append(body if sign == "+" else f"-{body}")
        else:
            parts.append(f"{sign} {body}")
    return " ".join(parts)


class RatFunc:
    """An element of Q(q) in lowest terms."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=1, *, _normalized: bool = False):
        if not isinstance(num, flint.fmpz_poly):
            num = _poly([num]) if isinstance(num, int) else _poly(num)
        if not isinstance(den, flint.fmpz_poly):
            den = _poly([den]) if isinstance(den, int) else _poly(den)
        if not _normalized:
            if den.degree() < 0:
                raise DivisionByZero("rational function with zero denominator")
            if num.degree() < 0:
                num, den = _poly([]), _poly([1])
            else:
                g = num.gcd(den)
                if g != 1:
                    num = num // g
                    den = den // g
                if _lead(den) < 0:
                    num, den = -num, -den
        self.num = num
        self.den = den
        self._hash = None

    # construction helpers
    @classmethod
    def q(cls) -> "RatFunc":
        return cls(_poly([0, 1]), _poly([1]), _normalized=True)

    @classmethod
    def const(cls, value: Union[int, Fraction]) -> "RatFunc":
        value = Fraction(value)
        return cls(_poly([value.numerator]), _poly([value.denominator]))

    @staticmethod
    def _coerce(other) -> "RatFunc | None":
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, (int, Fraction)):
            return RatFunc.const(other)
        return None

    # arithmetic
    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, _normalized=True)

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
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.num.degree() < 0:
            raise DivisionByZero("inverse of zero rational function")
        return RatFunc(self.den, self.num)

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

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        return RatFunc(self.num**n, self.den**n, _normalized=True)

    # comparison and hashing
    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        if self._hash is None:
            if self.is_constant():
                self._hash = hash(self.constant_value())
            else:
                self._hash = hash((tuple(int(c) for c in self.num.coeffs()), tuple(int(c) for c in self.den.coeffs())))
        return self._hash

    def __bool__(self):
        return self.num.degree() >= 0

    # inspection
    def is_constant(self) -> bool:
        return self.num.degree() <= 0 and self.den.degree() == 0

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("not a constant rational function")
        n = int(self.num[0]) if self.num.degree() == 0 else 0
        return Fraction(n, int(self.den[0]))

    def specialize(self, q0) -> Fraction:
        q0 = Fraction(q0)
        point = flint.fmpq(q0.numerator, q0.denominator)
        d = self.den(point)
        if d == 0:
            raise PoleAtPoint(f"{self} has a pole at q = {q0}")
        v = self.num(point) / d
        return Fraction(int(v.p), int(v.q))

    def degree(self) -> int:
        """Degree at infinity: deg(num) - deg(den)."""
        if not self:
            raise ZeroInput("degree of zero")
        return self.num.degree() - self.den.degree()

    def valuation(self) -> int:
        """Order of vanishing at q = 0."""
        if not self:
            raise ZeroInput("valuation of zero")
        return _trailing_order(self.num) - _trailing_order(self.den)

    def __str__(self):
        if self.den == 1:
            return _poly_text(self.num)
        if self.is_constant():
            return str(self.constant_value())
        num, den = _poly_text(self.num), _poly_text(self.den)
        if " " in num:
            num = f"({num})"
        if " " in den or "*" in den:
            den = f"({den})"
        return f"{num}/{den}"

    def __repr__(self):
        return f"RatFunc({self})"


Scalar = Union[Fraction, RatFunc]

QQ = "QQ"
QQ_Q = "QQ(q)"


def field_of(a) -> str:
    if isinstance(a, RatFunc):
        return QQ_Q
    if isinstance(a, (int, Fraction)):
        return QQ
    raise TypeError(f"not a scalar: {a!r}")


def _check_same(a, b) -> None:
    if field_of(a) != field_of(b):
        raise MixedField(f"cannot combine {field_of(a)} and {field_of(b)} scalars")


def add(a, b):
    _check_same(a, b)
    return a + b


def sub(a, b):
    _check_same(a, b)
    return a - b


def mul(a, b):
    _check_same(a, b)
    return a * b


def div(a, b):
    _check_same(a, b)
    if is_zero(b):
        raise DivisionByZero("division by zero")
    if isinstance(a, RatFunc):
        return a / b
    return Fraction(a) / Fraction(b)


def neg(a):
    return -a


def inv(a):
    if is_zero(a):
        raise DivisionByZero("inverse of zero")
    if isinstance(a, RatFunc):
        return a.inverse()
    return 1 / Fraction(a)


def power(a, n: int):
    if n < 0 and is_zero(a):
        raise DivisionByZero("negative power of zero")
    if isinstance(a, RatFunc):
        return a**n
    return Fraction(a) ** n


def is_zero(a) -> bool:
    return not a


def eq(a, b) -> bool:
    _check_same(a, b)
    return a == b


def is_root_of_unity(a) -> int | None:
    """Return the multiplicative order of ``a`` if it is a root of unity.

    The only roots of unity in Q and Q(q) are 1 and -1.
    """
    if isinstance(a, RatFunc):
        if not a.is_constant():
            return None
        a = a.constant_value()
    if a == 1:
        return 1
    if a == -1:
        return 2
    return None


def specialize(a, q0):
    """Evaluate at ``q = q0``; rationals are returned unchanged."""
    if isinstance(a, RatFunc):
        return a.specialize(q0)
    return Fraction(a)


def dominance(a) -> tuple[int, int]:
    """Growth pair (degree at infinity, valuation at zero) of a nonzero scalar."""
    if is_zero(a):
        raise ZeroInput("dominance of zero")
    if isinstance(a, RatFunc):
        return (a.degree(), a.valuation())
    return (0, 0)


def to_text(a) -> str:
    if isinstance(a, RatFunc):
        return str(a)
    a = Fraction(a)
    return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"


def from_text(text: str, field: str = QQ):
    """Parse a scalar written by :func:`to_text` (or any q-expression)."""
    from .expr import parse_scalar

    return parse_scalar(text, field)


def coerce(value, field: str):
    """Convert an int/Fraction (or same-field scalar) into ``field``."""
    if field == QQ_Q:
        if isinstance(value, RatFunc):
            return value
        return RatFunc.const(value)
    if isinstance(value, RatFunc):
        if value.is_constant():
            return value.constant_value()
        raise MixedField(f"{value} is not a rational number")
    return Fraction(value)


def one(field: str):
    return coerce(1, field)


def zero(field: str):
    return coerce(0, field)


Q = RatFunc.q()
