"""Commutative Cartan subalgebras, their automorphisms and weights.

Three families are supported:

* ``PolyFamily``: the polynomial ring F[h];
* ``GroupFamily``: the group algebra of Z^r x Z/n_1 x ... x Z/n_t (Laurent
  polynomials when there is no torsion);
* ``FunZFamily``: functions Z -> F that are constant outside a finite set,
  written ``c + sum a_m t[m]`` with orthogonal idempotents ``t[m]``.

Elements of every family are :class:`BaseElement` values (a sparse dict of
coefficients). Automorphisms are :class:`PolyAffine`, :class:`CharTwist` and
:class:`ZShift`; algebra maps H -> F (weights) are :class:`PolyWeight`,
:class:`GroupWeight` and :class:`ZPointWeight`.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from . import scalar as S
from .errors import NotAnAutomorphism, NotHopfFamily, ValidationError

_NATIVE = {S.QQ: Fraction, S.QQ_Q: S.RatFunc}

# key of the constant part of a FunZ element
CONST = None


def _coeff_text(c) -> str:
    t = S.to_text(c)
    if any(ch in t for ch in " /") or t.startswith("-"):
        return f"({t})"
    return t


def _is_negative(c) -> bool:
    if isinstance(c, S.RatFunc):
        return c.is_constant() and c.constant_value() < 0
    return c < 0


def _join_terms(parts: list[tuple[object, str]]) -> str:
    """Render [(coefficient, monomial)] where monomial '' means the unit."""
    if not parts:
        return "0"
    out: list[str] = []
    for c, mono in parts:
        negative = _is_negative(c)
        if negative:
            c = -c
        if mono == "":
            body = S.to_text(c)
            if isinstance(c, S.RatFunc) and not c.is_constant():
                body = f"({body})"
        elif c == 1:
            body = mono
        else:
            body = f"{_coeff_text(c)}*{mono}"
        if out:
            out.append(f"- {body}" if negative else f"+ {body}")
        else:
            out.append(f"-{body}" if negative else body)
    return " ".join(out)


# ---------------------------------------------------------------- families


@dataclass(frozen=True)
class PolyFamily:
    field: str = S.QQ
    kind = "poly"

    def normalize_key(self, key):
        if not isinstance(key, int) or key < 0:
            raise ValidationError(f"bad exponent {key!r} for F[h]")
        return key

    def unit_key(self):
        return 0

    def mul_terms(self, a: dict, b: dict) -> dict:
        out: dict = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                k = ea + eb
                out[k] = out.get(k, 0) + ca * cb
        return out

    def monomial_text(self, key) -> str:
        if key == 0:
            return ""
        return "h" if key == 1 else f"h^{key}"

    def sort_key(self, key):
        return -key


@dataclass(frozen=True)
class GroupFamily:
    rank: int = 1
    torsion: tuple[int, ...] = ()
    field: str = S.QQ
    kind = "group"

    def __post_init__(self):
        if self.rank < 0 or any(n < 2 for n in self.torsion):
            raise ValidationError("group must be Z^r x prod Z/n with n >= 2")

    @property
    def ngens(self) -> int:
        return self.rank + len(self.torsion)

    def normalize_key(self, key):
        key = tuple(key)
        if len(key) != self.ngens:
            raise ValidationError(f"group element {key} has wrong length")
        return key[: self.rank] + tuple(k % n for k, n in zip(key[self.rank :], self.torsion))

    def unit_key(self):
        return (0,) * self.ngens

    def mul_terms(self, a: dict, b: dict) -> dict:
        out: dict = {}
        for ga, ca in a.items():
            for gb, cb in b.items():
                k = self.normalize_key(tuple(x + y for x, y in zip(ga, gb)))
                out[k] = out.get(k, 0) + ca * cb
        return out

    def generator_name(self, i: int) -> str:
        if self.ngens == 1:
            return "K"
        return f"K[{i}]"

    def monomial_text(self, key) -> str:
        parts = []
        for i, e in enumerate(key):
            if e == 0:
                continue
            name = self.generator_name(i)
            parts.append(name if e == 1 else f"{name}^{e}")
        return "*".join(parts)

    def sort_key(self, key):
        return tuple(-k for k in key)


@dataclass(frozen=True)
class FunZFamily:
    field: str = S.QQ
    kind = "funz"

    def normalize_key(self, key):
        if key is CONST:
            return key
        if not isinstance(key, int):
            raise ValidationError(f"bad point {key!r} for functions on Z")
        return key

    def unit_key(self):
        return CONST

    def mul_terms(self, a: dict, b: dict) -> dict:
        ca = a.get(CONST, 0)
        cb = b.get(CONST, 0)
        out: dict = {}
        if ca and cb:
            out[CONST] = ca * cb
        for m in set(a) | set(b):
            if m is CONST:
                continue
            am = a.get(m, 0)
            bm = b.get(m, 0)
            v = ca * bm + am * cb + am * bm
            if v:
                out[m] = v
        return out

    def monomial_text(self, key) -> str:
        return "" if key is CONST else f"t[{key}]"

    def sort_key(self, key):
        return (0, 0) if key is CONST else (1, key)


Family = Union[PolyFamily, GroupFamily, FunZFamily]


class BaseElement:
    """A sparse element of a Cartan family."""

    __slots__ = ("family", "terms")

    def __init__(self, family: Family, terms: dict | None = None):
        self.family = family
        clean = {}
        for k, c in (terms or {}).items():
            if c:
                clean[k] = c if type(c) is _NATIVE[family.field] else S.coerce(c, family.field)
        self.terms = clean

    # constructors
    @classmethod
    def scalar(cls, family: Family, c) -> "BaseElement":
        return cls(family, {family.unit_key(): S.coerce(c, family.field)})

    @classmethod
    def monomial(cls, family: Family, key, c=1) -> "BaseElement":
        return cls(family, {family.normalize_key(key): S.coerce(c, family.field)})

    def _wrap(self, other) -> "BaseElement":
        if isinstance(other, BaseElement):
            if other.family != self.family:
                raise ValidationError("elements of different Cartan families")
            return other
        return BaseElement.scalar(self.family, other)

    def __add__(self, other):
        o = self._wrap(other)
        out = dict(self.terms)
        for k, c in o.terms.items():
            out[k] = out.get(k, 0) + c
        return BaseElement(self.family, out)

    __radd__ = __add__

    def __neg__(self):
        return BaseElement(self.family, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._wrap(other))

    def __rsub__(self, other):
        return self._wrap(other) - self

    def __mul__(self, other):
        if isinstance(other, BaseElement):
            o = self._wrap(other)
            return BaseElement(self.family, self.family.mul_terms(self.terms, o.terms))
        if isinstance(other, (int, Fraction, S.RatFunc)):
            return BaseElement(self.family, {k: c * other for k, c in self.terms.items()})
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, S.RatFunc)):
            return self * other
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, S.RatFunc)):
            return self * S.inv(S.coerce(other, self.family.field))
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValidationError("only nonnegative integer powers of Cartan elements")
        out = BaseElement.scalar(self.family, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, BaseElement):
            return self.family == other.family and self.terms == other.terms
        if isinstance(other, (int, Fraction, S.RatFunc)):
            return self == BaseElement.scalar(self.family, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.family, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def is_scalar(self) -> bool:
        return set(self.terms) <= {self.family.unit_key()}

    def scalar_value(self):
        if not self.is_scalar():
            raise ValidationError(f"{self} is not a scalar")
        return self.terms.get(self.family.unit_key(), S.zero(self.family.field))

    def coefficient(self, key):
        return self.terms.get(key, S.zero(self.family.field))

    def degree(self) -> int:
        """Degree in h (Poly family only); -1 for zero."""
        return max(self.terms, default=-1)

    def __str__(self):
        fam = self.family
        keys = sorted(self.terms, key=fam.sort_key)
        return _join_terms([(self.terms[k], fam.monomial_text(k)) for k in keys])

    def __repr__(self):
        return f"BaseElement({self})"


def h_var(family: PolyFamily) -> BaseElement:
    return BaseElement.monomial(family, 1)


def group_gen(family: GroupFamily, i: int, power: int = 1) -> BaseElement:
    key = [0] * family.ngens
    key[i] = power
    return BaseElement.monomial(family, tuple(key))


def point_idempotent(family: FunZFamily, m: int) -> BaseElement:
    return BaseElement.monomial(family, m)


# ---------------------------------------------------------------- automorphisms


@dataclass(frozen=True)
class PolyAffine:
    """h -> a*h + b."""

    a: object
    b: object


@dataclass(frozen=True)
class CharTwist:
    """g -> chi(g) g, with chi given by its values on the generators."""

    chi: tuple


@dataclass(frozen=True)
class ZShift:
    """t[m] -> t[m + k]; constants are fixed."""

    k: int


Endo = Union[PolyAffine, CharTwist, ZShift]


def validate_endo(theta: Endo, family: Family) -> None:
    if isinstance(theta, PolyAffine):
        if not isinstance(family, PolyFamily):
            raise NotAnAutomorphism("affine map needs the polynomial family")
        if S.is_zero(theta.a):
            raise NotAnAutomorphism("h -> b is not invertible")
    elif isinstance(theta, CharTwist):
        if not isinstance(family, GroupFamily):
            raise NotAnAutomorphism("character twist needs a group algebra")
        if len(theta.chi) != family.ngens:
            raise NotAnAutomorphism("character needs one value per generator")
        for i, v in enumerate(theta.chi):
            if S.is_zero(v):
                raise NotAnAutomorphism("character values must be units")
            if i >= family.rank:
                n = family.torsion[i - family.rank]
                if S.power(v, n) != 1:
                    raise NotAnAutomorphism(f"chi of a generator of order {n} must be an {n}-th root of unity")
    elif isinstance(theta, ZShift):
        if not isinstance(family, FunZFamily):
            raise NotAnAutomorphism("shift needs the function family")
    else:
        raise NotAnAutomorphism(f"unknown automorphism {theta!r}")


def _affine_power(theta: PolyAffine, n: int):
    """Coefficients (A, B) with theta^n(h) = A h + B, for any integer n."""
    a, b = theta.a, theta.b
    if a == 1:
        return a, b * n
    an = S.power(a, n)
    return an, b * (an - 1) / (a - 1)


def char_value(chi: tuple, key: tuple):
    out = S.one(S.field_of(chi[0])) if chi else Fraction(1)
    for v, e in zip(chi, key):
        if e:
            out = out * S.power(v, e)
    return out


def apply(theta: Endo, x: BaseElement, n: int = 1) -> BaseElement:
    """theta^n(x) for any integer n."""
    fam = x.family
    if n == 0 or not x.terms:
        return x
    if isinstance(theta, PolyAffine):
        A, B = _affine_power(theta, n)
        out: dict = {}
        lin = {0: B, 1: A} if B else {1: A}
        powers = {0: {0: S.one(fam.field)}}
        top = max(x.terms)
        for e in range(1, top + 1):
            powers[e] = fam.mul_terms(powers[e - 1], lin)
        for e, c in x.terms.items():
            for k, v in powers[e].items():
                out[k] = out.get(k, 0) + c * v
        return BaseElement(fam, out)
    if isinstance(theta, CharTwist):
        return BaseElement(fam, {g: c * S.power(char_value(theta.chi, g), n) for g, c in x.terms.items()})
    if isinstance(theta, ZShift):
        return BaseElement(
            fam, {(m if m is CONST else m + n * theta.k): c for m, c in x.terms.items()}
        )
    raise NotAnAutomorphism(f"unknown automorphism {theta!r}")


def inverse(theta: Endo) -> Endo:
    if isinstance(theta, PolyAffine):
        return PolyAffine(S.inv(theta.a), -theta.b / theta.a)
    if isinstance(theta, CharTwist):
        return CharTwist(tuple(S.inv(v) for v in theta.chi))
    return ZShift(-theta.k)


def compose(first: Endo, second: Endo) -> Endo:
    """The automorphism ``first o second``."""
    if isinstance(first, PolyAffine) and isinstance(second, PolyAffine):
        return PolyAffine(first.a * second.a, first.a * second.b + first.b)
    if isinstance(first, CharTwist) and isinstance(second, CharTwist):
        return CharTwist(tuple(x * y for x, y in zip(first.chi, second.chi)))
    if isinstance(first, ZShift) and isinstance(second, ZShift):
        return ZShift(first.k + second.k)
    raise ValidationError("cannot compose automorphisms of different families")


# ---------------------------------------------------------------- weights


@dataclass(frozen=True)
class PolyWeight:
    value: object


@dataclass(frozen=True)
class GroupWeight:
    values: tuple


@dataclass(frozen=True)
class ZPointWeight:
    m: int


Weight = Union[PolyWeight, GroupWeight, ZPointWeight]


def validate_weight(lam: Weight, family: Family) -> None:
    if isinstance(lam, PolyWeight):
        ok = isinstance(family, PolyFamily)
    elif isinstance(lam, GroupWeight):
        ok = isinstance(family, GroupFamily) and len(lam.values) == family.ngens
        if ok:
            for i, v in enumerate(lam.values):
                if S.is_zero(v):
                    raise ValidationError("group weights take unit values")
                if i >= family.rank and S.power(v, family.torsion[i - family.rank]) != 1:
                    raise ValidationError("weight value on a torsion generator must be a root of unity")
    else:
        ok = isinstance(family, FunZFamily) and isinstance(lam, ZPointWeight)
    if not ok:
        raise ValidationError(f"weight {lam!r} does not match the Cartan family")


def evaluate(lam: Weight, x: BaseElement):
    """lambda(x)."""
    fam = x.family
    if isinstance(lam, PolyWeight):
        out = S.zero(fam.field)
        for e, c in x.terms.items():
            out = out + c * S.power(lam.value, e) if e else out + c
        return out
    if isinstance(lam, GroupWeight):
        out = S.zero(fam.field)
        for g, c in x.terms.items():
            out = out + c * char_value(lam.values, g)
        return out
    return x.terms.get(CONST, S.zero(fam.field)) + x.terms.get(lam.m, 0)


def dual_act(theta: Endo, n: int, lam: Weight) -> Weight:
    """(theta^n * lambda) = lambda o theta^(-n)."""
    if n == 0:
        return lam
    if isinstance(theta, PolyAffine):
        A, B = _affine_power(theta, -n)
        return PolyWeight(A * lam.value + B)
    if isinstance(theta, CharTwist):
        return GroupWeight(tuple(v * S.power(c, -n) for v, c in zip(lam.values, theta.chi)))
    return ZPointWeight(lam.m + n * theta.k)


@dataclass(frozen=True)
class Free:
    pass


@dataclass(frozen=True)
class FixedAt:
    """theta has infinite order but theta^n * lambda = lambda for this minimal n > 0."""

    n: int


@dataclass(frozen=True)
class TorsionOrbit:
    """theta has finite order; ``period`` is the size of the orbit of lambda."""

    period: int


FreenessVerdict = Union[Free, FixedAt, TorsionOrbit]


def is_free(theta: Endo, lam: Weight) -> FreenessVerdict:
    if isinstance(theta, PolyAffine):
        a, b = theta.a, theta.b
        order = S.is_root_of_unity(a)
        if order == 1:
            return TorsionOrbit(1) if S.is_zero(b) else Free()
        fixed = b / (1 - a)
        if order is not None:
            return TorsionOrbit(1 if lam.value == fixed else order)
        return FixedAt(1) if lam.value == fixed else Free()
    if isinstance(theta, CharTwist):
        order = char_order(theta.chi)
        return Free() if order is None else TorsionOrbit(order)
    return Free() if theta.k else TorsionOrbit(1)


def char_order(chi: tuple) -> int | None:
    """Order of the character (None when infinite)."""
    order = 1
    for v in chi:
        o = S.is_root_of_unity(v)
        if o is None:
            return None
        order = order * o // math.gcd(order, o)
    return order


def theta_order(theta: Endo) -> int | None:
    """Order of the automorphism itself (None when infinite)."""
    if isinstance(theta, PolyAffine):
        o = S.is_root_of_unity(theta.a)
        if o == 1 and not S.is_zero(theta.b):
            return None
        return o
    if isinstance(theta, CharTwist):
        return char_order(theta.chi)
    return None if theta.k else 1


# ---------------------------------------------------------------- Hopf structure


def rho(lam: Weight) -> Endo:
    """Automorphism attached to a weight through the coproduct: (1 (x) lambda) o Delta."""
    if isinstance(lam, PolyWeight):
        return PolyAffine(S.one(S.field_of(lam.value)), -lam.value)
    if isinstance(lam, GroupWeight):
        return CharTwist(tuple(S.inv(v) for v in lam.values))
    raise NotHopfFamily("functions on Z carry no Hopf structure here")


def psi_eps(theta: Endo) -> Weight:
    """counit o theta^(-1)."""
    if isinstance(theta, PolyAffine):
        return PolyWeight(-theta.b / theta.a)
    if isinstance(theta, CharTwist):
        return GroupWeight(tuple(S.inv(v) for v in theta.chi))
    raise NotHopfFamily("functions on Z carry no Hopf structure here")


def convolve(mu: Weight, nu: Weight) -> Weight:
    """Convolution product of weights (mu (x) nu) o Delta."""
    if isinstance(mu, PolyWeight) and isinstance(nu, PolyWeight):
        return PolyWeight(mu.value + nu.value)
    if isinstance(mu, GroupWeight) and isinstance(nu, GroupWeight):
        return GroupWeight(tuple(x * y for x, y in zip(mu.values, nu.values)))
    raise NotHopfFamily("convolution needs two polynomial or two group weights")


# ---------------------------------------------------------------- fixed points of theta


@dataclass
class CenterDescription:
    """Spanning set of ker(id - theta) inside H, truncated by ``bound``."""

    basis: list
    complete: bool
    note: str


def center_in_h(theta: Endo, family: Family, degree_bound: int = 6) -> CenterDescription:
    if isinstance(theta, PolyAffine):
        one = BaseElement.scalar(family, 1)
        a, b = theta.a, theta.b
        order = S.is_root_of_unity(a)
        if order == 1 and S.is_zero(b):
            basis = [BaseElement.monomial(family, e) for e in range(degree_bound + 1)]
            return CenterDescription(basis, False, "theta is the identity: every polynomial is fixed")
        if order is None or order == 1:
            return CenterDescription([one], True, "only constants are fixed")
        p = b / (1 - a)
        shifted = h_var(family) - p
        basis = [shifted ** (order * k) for k in range(degree_bound // order + 1)]
        return CenterDescription(basis, False, f"polynomials in (h - {S.to_text(p)})^{order}")
    if isinstance(theta, CharTwist):
        ranges = [range(-degree_bound, degree_bound + 1)] * family.rank + [range(n) for n in family.torsion]
        basis = [
            BaseElement.monomial(family, g)
            for g in itertools.product(*ranges)
            if char_value(theta.chi, g) == 1
        ]
        complete = char_order(theta.chi) is None and len(basis) == 1
        return CenterDescription(basis, complete, "span of group elements g with chi(g) = 1")
    one = BaseElement.scalar(family, 1)
    if theta.k:
        return CenterDescription([one], True, "only constant functions are shift invariant")
    basis = [one] + [point_idempotent(family, m) for m in range(-degree_bound, degree_bound + 1)]
    return CenterDescription(basis, False, "zero shift: every function is fixed")
