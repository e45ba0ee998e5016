"""Regular triangular monoids and the algebras A_zeta(E, c).

A monoid family exposes its ambient group (``mul``, ``inv``, ``one``), the
positive cone (``is_positive``), the left action ``act(p, n)`` of a positive
element on a negative one, and ``ball(r)``, a finite set of positive elements
used for spot checks of the cocycle identities

    p . q^-1      = (p |x q^-1) . (q |x p^-1)^-1
    p |x (q^-1 r^-1) = (p |x q^-1) . ((q |x p^-1)^-1 |x r^-1).

E is modelled as eta * Z[1/S] for a rational eta > 0 and a finite prime set S.
The semidirect group Z^k |x_zeta E has elements (e, n) with
(e, n)(e', n') = (e + zeta^n e', n + n').
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from . import scalar as S
from .errors import NotAdmissible, NotStable, ValidationError

CONST = None


class Undefined(Exception):
    """A partial product left the sampled table."""


def _prime_factors(n: int) -> set[int]:
    out, p = set(), 2
    n = abs(n)
    while p * p <= n:
        while n % p == 0:
            out.add(p)
            n //= p
        p += 1
    if n > 1:
        out.add(n)
    return out


# ---------------------------------------------------------------- monoid families


@dataclass(frozen=True)
class AbelianCone:
    """E = eta * Z[1/S] with positive cone E >= 0 and trivial action."""

    eta: Fraction = Fraction(1)
    primes: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "eta", Fraction(self.eta))
        object.__setattr__(self, "primes", tuple(sorted(set(int(p) for p in self.primes))))
        if self.eta <= 0:
            raise ValidationError("eta must be positive")
        for p in self.primes:
            if _prime_factors(p) != {p}:
                raise ValidationError(f"{p} is not a prime")

    def contains(self, e) -> bool:
        x = Fraction(e) / self.eta
        return _prime_factors(x.denominator) <= set(self.primes)

    def one(self):
        return Fraction(0)

    def mul(self, a, b):
        return a + b

    def inv(self, a):
        return -a

    def is_positive(self, a) -> bool:
        return a >= 0

    def act(self, p, n):
        return n

    def ball(self, r: int) -> list:
        """eta * m / p^j with m + j <= r."""
        out = {Fraction(0)}
        for m in range(1, r + 1):
            out |= {self.eta * m / p**j for p in self.primes or (1,) for j in range(r - m + 1)}
        return sorted(out)


@dataclass(frozen=True)
class FreeMonoid:
    """N^k inside Z^k with trivial action."""

    k: int

    def one(self):
        return (0,) * self.k

    def mul(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def inv(self, a):
        return tuple(-x for x in a)

    def is_positive(self, a) -> bool:
        return all(x >= 0 for x in a)

    def act(self, p, n):
        return n

    def ball(self, r: int) -> list:
        return [v for v in itertools.product(range(r + 1), repeat=self.k) if sum(v) <= r]


@dataclass(frozen=True)
class Semidirect:
    """N^k |x_zeta (E >= 0) with (e+, n+) |x (e-, n-) = (zeta^n+ e-, n-)."""

    zeta: tuple
    cone: AbelianCone = AbelianCone()

    def __post_init__(self):
        z = tuple(Fraction(x) for x in self.zeta)
        object.__setattr__(self, "zeta", z)
        for x in z:
            if x <= 0:
                raise NotAdmissible("zeta must be positive")
            bad = (_prime_factors(x.numerator) | _prime_factors(x.denominator)) - set(self.cone.primes)
            if bad:
                raise NotAdmissible(f"zeta = {x} does not preserve E: primes {sorted(bad)} are not inverted")

    @property
    def k(self) -> int:
        return len(self.zeta)

    def zeta_pow(self, n: Sequence[int]) -> Fraction:
        out = Fraction(1)
        for z, e in zip(self.zeta, n):
            out *= z**e
        return out

    def one(self):
        return (Fraction(0), (0,) * self.k)

    def mul(self, a, b):
        return (a[0] + self.zeta_pow(a[1]) * b[0], tuple(x + y for x, y in zip(a[1], b[1])))

    def inv(self, a):
        n = tuple(-x for x in a[1])
        return (-self.zeta_pow(n) * a[0], n)

    def is_positive(self, a) -> bool:
        return a[0] >= 0 and all(x >= 0 for x in a[1])

    def act(self, p, n):
        return (self.zeta_pow(p[1]) * n[0], n[1])

    def ball(self, r: int) -> list:
        ns = FreeMonoid(self.k).ball(r)
        return [(e, n) for n in ns for e in self.cone.ball(r - sum(n))]


@dataclass(frozen=True)
class Product:
    """Componentwise product of RTMs."""

    factors: tuple

    def one(self):
        return tuple(f.one() for f in self.factors)

    def mul(self, a, b):
        return tuple(f.mul(x, y) for f, x, y in zip(self.factors, a, b))

    def inv(self, a):
        return tuple(f.inv(x) for f, x in zip(self.factors, a))

    def is_positive(self, a) -> bool:
        return all(f.is_positive(x) for f, x in zip(self.factors, a))

    def act(self, p, n):
        return tuple(f.act(x, y) for f, x, y in zip(self.factors, p, n))

    def ball(self, r: int) -> list:
        return list(itertools.product(*(f.ball(r) for f in self.factors)))


@dataclass(frozen=True)
class SubRtm:
    """Submonoid of ``parent`` generated by ``generators``.

    ``contains`` decides membership; without it a bounded span is used.
    """

    parent: object
    generators: tuple
    contains: Callable | None = None

    def one(self):
        return self.parent.one()

    def mul(self, a, b):
        return self.parent.mul(a, b)

    def inv(self, a):
        return self.parent.inv(a)

    def act(self, p, n):
        return self.parent.act(p, n)

    def span(self, r: int) -> set:
        out = {self.parent.one()}
        frontier = set(out)
        for _ in range(r):
            frontier = {self.parent.mul(a, g) for a in frontier for g in self.generators}
            out |= frontier
        return out

    def is_positive(self, a) -> bool:
        return self.parent.is_positive(a)

    def ball(self, r: int) -> list:
        return sorted(self.span(r), key=repr)


@dataclass
class Sampled:
    """A finite partial group with tables, for testing the cocycle checker."""

    elements: list
    unit: object
    product: dict
    inverse: dict
    positive: set
    action: dict

    MAX_ELEMENTS = 64

    def __post_init__(self):
        if len(self.elements) > self.MAX_ELEMENTS:
            raise ValidationError(f"sampled tables are limited to {self.MAX_ELEMENTS} elements")

    @classmethod
    def integer_window(cls, w: int) -> "Sampled":
        """Integers in [-w, w] with partial addition and the trivial action."""
        elems = list(range(-w, w + 1))
        prod = {(a, b): a + b for a in elems for b in elems if -w <= a + b <= w}
        act = {(p, n): n for p in elems if p >= 0 for n in elems if n <= 0}
        return cls(elems, 0, prod, {a: -a for a in elems}, {a for a in elems if a >= 0}, act)

    def mutate(self, key, value) -> "Sampled":
        act = dict(self.action)
        if key not in act:
            raise ValidationError(f"no action entry {key}")
        if value not in self.inverse:
            raise ValidationError(f"{value} is not an element of the table")
        act[key] = value
        return Sampled(list(self.elements), self.unit, dict(self.product), dict(self.inverse), set(self.positive), act)

    def one(self):
        return self.unit

    def mul(self, a, b):
        try:
            return self.product[(a, b)]
        except KeyError:
            raise Undefined from None

    def inv(self, a):
        return self.inverse[a]

    def is_positive(self, a) -> bool:
        return a in self.positive

    def act(self, p, n):
        try:
            return self.action[(p, n)]
        except KeyError:
            raise Undefined from None

    def ball(self, r: int) -> list:
        return sorted(self.positive)


# ---------------------------------------------------------------- cocycle checks


@dataclass(frozen=True)
class Pass:
    checked: int


@dataclass(frozen=True)
class Fail:
    law: str
    witness: tuple


def _checks(m, P: list):
    one = m.one()
    for q in P:
        n = m.inv(q)
        yield "unit acts trivially", (one, q), lambda n=n: m.act(one, n) == n
        yield "unit is fixed", (q,), lambda q=q: m.act(q, one) == one
    for p in P:
        for q in P:
            n = m.inv(q)

            def negative(p=p, n=n):
                return m.is_positive(m.inv(m.act(p, n)))

            yield "action lands in the negative cone", (p, q), negative

            def cocycle1(p=p, q=q):
                lhs = m.mul(p, m.inv(q))
                rhs = m.mul(m.act(p, m.inv(q)), m.inv(m.act(q, m.inv(p))))
                return lhs == rhs

            yield "first cocycle", (p, q), cocycle1
    for p, q, r in itertools.product(P, repeat=3):

        def action(p=p, q=q, r=r):
            n = m.inv(r)
            return m.act(m.mul(p, q), n) == m.act(p, m.act(q, n))

        def cocycle2(p=p, q=q, r=r):
            lhs = m.act(p, m.mul(m.inv(q), m.inv(r)))
            rhs = m.mul(m.act(p, m.inv(q)), m.act(m.inv(m.act(q, m.inv(p))), m.inv(r)))
            return lhs == rhs

        yield "action is a monoid action", (p, q, r), action
        yield "second cocycle", (p, q, r), cocycle2


def check_cocycles(m, ball: int = 3):
    """Verify the action axioms and both cocycle identities on ``m.ball(ball)``.

    Checks whose products leave a partial table are skipped. The first failure
    in enumeration order is returned.
    """
    P = m.ball(ball)
    count = 0
    for law, witness, check in _checks(m, P):
        try:
            ok = check()
        except Undefined:
            continue
        count += 1
        if not ok:
            return Fail(law, witness)
    return Pass(count)


def check_sub_stability(sub: SubRtm, r: int = 2):
    """The action of the submonoid must map its negative cone into itself."""
    inside = sub.contains or sub.span(3 * r).__contains__
    ball = sub.span(r)
    for p in ball:
        for q in ball:
            if not inside(sub.inv(sub.act(p, sub.inv(q)))):
                return Fail("submonoid is not stable under the action", (p, q))
    return Pass(len(ball) ** 2)


@dataclass(frozen=True)
class Classification:
    based: bool
    discretely_graded: bool
    simple_roots: tuple


def classify(m) -> Classification:
    """Based iff discretely graded iff E = eta Z and every zeta_j = 1."""
    if isinstance(m, AbelianCone):
        m = Semidirect((), m)
    if isinstance(m, FreeMonoid):
        return Classification(True, True, tuple(f"eps_{j + 1}" for j in range(m.k)))
    if not isinstance(m, Semidirect):
        raise ValidationError("classification is available for cone, free and semidirect monoids")
    ok = not m.cone.primes and all(z == 1 for z in m.zeta)
    roots = tuple(f"eps_{j + 1}" for j in range(m.k)) + (f"(0,{m.cone.eta})",) if ok else ()
    return Classification(ok, ok, roots)


# ---------------------------------------------------------------- the algebra A_zeta(E, c)

# A basis key (e_minus, n_minus, h, n_plus, e_plus) stands for
# t^(-e_minus) * prod (x_j^-)^(n_minus_j) * h * prod (x_j^+)^(n_plus_j) * t^(e_plus)
# where h is CONST (the unit of H0) or a group element g (the point function at g).


class RtmAlgebra:
    def __init__(self, monoid: Semidirect | AbelianCone, c: Sequence = ()):
        if isinstance(monoid, AbelianCone):
            monoid = Semidirect((), monoid)
        if not isinstance(monoid, Semidirect):
            raise ValidationError("the algebra needs a cone or semidirect monoid")
        self.m = monoid
        self.k = monoid.k
        if len(c) != self.k:
            raise ValidationError(f"expected {self.k} values of c, got {len(c)}")
        self.c = tuple(x if isinstance(x, S.RatFunc) else Fraction(x) for x in c)
        self.zero_n = (0,) * self.k

    def __eq__(self, other):
        return isinstance(other, RtmAlgebra) and (self.m, self.c) == (other.m, other.c)

    def __hash__(self):
        return hash((self.m, self.c))

    # group labels
    def label_t(self, e) -> tuple:
        return (Fraction(e), self.zero_n)

    def label_x(self, n: Sequence[int]) -> tuple:
        return (Fraction(0), tuple(n))

    def shift(self, h, gamma):
        """h o L_gamma on a basis function: delta_g -> delta_(gamma^-1 g)."""
        if h is CONST:
            return CONST
        return self.m.mul(self.m.inv(gamma), h)

    # generators
    def element(self, terms: dict) -> "RtmElement":
        return RtmElement(self, terms)

    def one(self) -> "RtmElement":
        return self.element({(Fraction(0), self.zero_n, CONST, self.zero_n, Fraction(0)): Fraction(1)})

    def t(self, e) -> "RtmElement":
        e = Fraction(e)
        if not self.m.cone.contains(e):
            raise ValidationError(f"{e} is not in E")
        key = (Fraction(0), self.zero_n, CONST, self.zero_n, e) if e >= 0 else (-e, self.zero_n, CONST, self.zero_n, Fraction(0))
        return self.element({key: Fraction(1)})

    def _unit(self, j: int) -> tuple:
        return tuple(1 if i == j else 0 for i in range(self.k))

    def x_plus(self, j: int) -> "RtmElement":
        return self.element({(Fraction(0), self.zero_n, CONST, self._unit(j), Fraction(0)): Fraction(1)})

    def x_minus(self, j: int) -> "RtmElement":
        return self.element({(Fraction(0), self._unit(j), CONST, self.zero_n, Fraction(0)): Fraction(1)})

    def delta(self, g) -> "RtmElement":
        """The point function at g in H0."""
        g = (Fraction(g[0]), tuple(g[1]))
        return self.element({(Fraction(0), self.zero_n, g, self.zero_n, Fraction(0)): Fraction(1)})

    def monomial(self, e_minus=0, n_minus=None, h=CONST, n_plus=None, e_plus=0) -> "RtmElement":
        key = (Fraction(e_minus), tuple(n_minus or self.zero_n), h, tuple(n_plus or self.zero_n), Fraction(e_plus))
        return self.element({key: Fraction(1)})

    # straightening
    def _weyl(self, m_plus: tuple, n_minus: tuple):
        """X+^m X-^n = sum coeff X-^(n-i) X+^(m-i), one index i per j."""
        ranges = [range(min(a, b) + 1) if not S.is_zero(cj) else range(1) for a, b, cj in zip(m_plus, n_minus, self.c)]
        for idx in itertools.product(*ranges):
            coeff = Fraction(1)
            for i, a, b, cj in zip(idx, m_plus, n_minus, self.c):
                if i:
                    coeff = coeff * (math.factorial(i) * math.comb(a, i) * math.comb(b, i)) * S.power(cj, i)
            yield (
                tuple(b - i for b, i in zip(n_minus, idx)),
                tuple(a - i for a, i in zip(m_plus, idx)),
                coeff,
            )

    @staticmethod
    def _hmul(a, b):
        if a is CONST:
            return b
        if b is CONST or a == b:
            return a
        return False

    def mul_keys(self, k1, k2) -> dict:
        em1, nm1, h1, np1, ep1 = k1
        em2, nm2, h2, np2, ep2 = k2
        zp = self.m.zeta_pow
        neg = lambda n: tuple(-x for x in n)  # noqa: E731
        # x+ t^(-e) = t^(-zeta e) x+  and  t^e x- = x- t^(zeta e)
        e_a = em2 * zp(np1)
        e_b = ep1 * zp(nm2)
        # h1 t^(-e_a) = t^(-e_a) (h1 o L_label), then past X-_1: x- t^(-e) = t^(-e/zeta) x-
        h1 = self.shift(h1, self.label_t(-e_a))
        e_left = em1 + e_a * zp(neg(nm1))
        # t^(e_b) h2 = (h2 o L_label^-1) t^(e_b), then past X+_2: t^e x+ = x+ t^(e/zeta)
        h2 = self.shift(h2, self.m.inv(self.label_t(e_b)))
        e_right = ep2 + e_b * zp(neg(np2))
        out: dict = {}
        for a, b, coeff in self._weyl(np1, nm2):
            # h1 X-^a = X-^a (h1 o L_(0,-a));  X+^b h2 = (h2 o L_(0,-b)) X+^b
            h = self._hmul(self.shift(h1, self.label_x(neg(a))), self.shift(h2, self.label_x(neg(b))))
            if h is False:
                continue
            key = (e_left, tuple(x + y for x, y in zip(nm1, a)), h, tuple(x + y for x, y in zip(b, np2)), e_right)
            out[key] = out.get(key, 0) + coeff
        return out

    def multiply(self, x: dict, y: dict) -> dict:
        out: dict = {}
        for k1, c1 in x.items():
            for k2, c2 in y.items():
                for k, c in self.mul_keys(k1, k2).items():
                    out[k] = out.get(k, 0) + c1 * c2 * c
        return {k: v for k, v in out.items() if not S.is_zero(v)}


class RtmElement:
    def __init__(self, algebra: RtmAlgebra, terms: dict | None = None):
        self.algebra = algebra
        self.terms = {k: v for k, v in (terms or {}).items() if not S.is_zero(v)}

    def _wrap(self, other) -> "RtmElement":
        if isinstance(other, RtmElement):
            if other.algebra != self.algebra:
                raise ValidationError("elements of different algebras")
            return other
        return self.algebra.one() * other

    def __add__(self, other):
        other = self._wrap(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return RtmElement(self.algebra, out)

    __radd__ = __add__

    def __neg__(self):
        return RtmElement(self.algebra, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._wrap(other))

    def __mul__(self, other):
        if isinstance(other, RtmElement):
            return RtmElement(self.algebra, self.algebra.multiply(self.terms, self._wrap(other).terms))
        return RtmElement(self.algebra, {k: v * other for k, v in self.terms.items()})

    def __rmul__(self, other):
        return RtmElement(self.algebra, {k: other * v for k, v in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, RtmElement):
            return self.algebra == other.algebra and self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for key in sorted(self.terms, key=_key_sort):
            parts.append(f"{S.to_text(self.terms[key])}*{key_text(key)}")
        return " + ".join(parts)

    __repr__ = __str__


def _key_sort(key):
    em, nm, h, np_, ep = key
    return (em, nm, (0,) if h is CONST else (1, h[0], h[1]), np_, ep)


def key_text(key) -> str:
    em, nm, h, np_, ep = key
    parts = []
    if em:
        parts.append(f"t^(-{em})")
    for j, n in enumerate(nm):
        if n:
            parts.append(f"xm{j + 1}" + (f"^{n}" if n > 1 else ""))
    if h is not CONST:
        parts.append(f"delta[{h[0]},{','.join(map(str, h[1]))}]".replace(",]", "]"))
    for j, n in enumerate(np_):
        if n:
            parts.append(f"xp{j + 1}" + (f"^{n}" if n > 1 else ""))
    if ep:
        parts.append(f"t^({ep})")
    return ".".join(parts) or "1"


def rtm_multiply(A: RtmAlgebra, x: RtmElement, y: RtmElement) -> RtmElement:
    if x.algebra != A or y.algebra != A:
        raise ValidationError("parameter mismatch between the algebra and its arguments")
    return x * y


def anti_involution(x: RtmElement) -> RtmElement:
    """t^e <-> t^-e, x_j^+ <-> x_j^-, identity on H0."""
    return RtmElement(x.algebra, {(ep, np_, h, nm, em): v for (em, nm, h, np_, ep), v in x.terms.items()})


def commutator(x: RtmElement, y: RtmElement) -> RtmElement:
    return x * y - y * x


# ---------------------------------------------------------------- Verma modules


def verma_action(x: RtmElement, g0) -> dict:
    """x . m_lambda for lambda = evaluation at g0, as {(e_minus, n_minus): coeff}."""
    out: dict = {}
    for (em, nm, h, np_, ep), v in x.terms.items():
        if any(np_) or ep:
            continue
        if h is not CONST and h != g0:
            continue
        out[(em, nm)] = out.get((em, nm), 0) + v
    return {k: v for k, v in out.items() if not S.is_zero(v)}


@dataclass
class MaximalVectorReport:
    point: tuple
    depth: int
    checked: int
    maximal: bool  # every vector is killed by t^e (e > 0) and by x_j^+ with c_j = 0
    x_plus_failures: list  # (monomial, j) where x_j^+ with c_j != 0 acts nontrivially
    dim_l_is_one: bool


def maximal_vector_check(A: RtmAlgebra, g0, depth: int = 4) -> MaximalVectorReport:
    g0 = (Fraction(g0[0]), tuple(g0[1]))
    es = [e for e in A.m.cone.ball(depth)]
    ns = FreeMonoid(A.k).ball(depth)
    raisers = [(A.t(e), None) for e in es if e > 0] + [(A.x_plus(j), j) for j in range(A.k)]
    checked = 0
    maximal = True
    failures = []
    for e in es:
        for n in ns:
            if not e and not any(n):
                continue
            b = A.monomial(e_minus=e, n_minus=n)
            for r, j in raisers:
                checked += 1
                if verma_action(r * b, g0):
                    if j is not None and not S.is_zero(A.c[j]):
                        failures.append((key_text(next(iter(b.terms))), j + 1))
                    else:
                        maximal = False
    return MaximalVectorReport(g0, depth, checked, maximal, failures, maximal and not failures)


# ---------------------------------------------------------------- Casimir and centre


@dataclass
class CasimirCommuteReport:
    omega: RtmElement
    stable: bool
    commutators: dict  # generator name -> commutator (0 when they commute)

    @property
    def central_on_sample(self) -> bool:
        return not any(self.commutators.values())


def casimir_omega(A: RtmAlgebra, qminus: Iterable) -> RtmElement:
    """Omega = sum over e in qminus of t^(-e) t^e."""
    out = RtmElement(A)
    for e in qminus:
        e = Fraction(e)
        if e < 0 or not A.m.cone.contains(e):
            raise ValidationError(f"{e} is not in the positive cone of E")
        out = out + A.monomial(e_minus=e, e_plus=e)
    return out


def _sample_generators(A: RtmAlgebra, sample: Sequence) -> dict:
    gens = {}
    for e in sample:
        gens[f"t^{e}"] = A.t(e)
        gens[f"t^-{e}"] = A.t(-Fraction(e))
    for j in range(A.k):
        gens[f"xp{j + 1}"] = A.x_plus(j)
        gens[f"xm{j + 1}"] = A.x_minus(j)
    gens["delta[0]"] = A.delta((0, A.zero_n))
    return gens


def casimir_commute(A: RtmAlgebra, qminus: Sequence, sample: Sequence = (1,), require_stable: bool = False):
    """Commutators of Omega(qminus) with sampled generators.

    ``stable`` records whether every x_j-direction rescaling maps qminus onto
    itself, the hypothesis under which Omega is central.
    """
    qs = {Fraction(e) for e in qminus}
    stable = all({z * e for e in qs} == qs for z in A.m.zeta)
    if require_stable and not stable:
        raise NotStable("zeta rescaling does not preserve the truncation")
    omega = casimir_omega(A, sorted(qs))
    comms = {name: commutator(omega, g) for name, g in _sample_generators(A, sample).items()}
    return CasimirCommuteReport(omega, stable, comms)


@dataclass
class CenterWitness:
    j: int
    expected_central: bool
    commutators: dict

    @property
    def central(self) -> bool:
        return not any(self.commutators.values())

    @property
    def ok(self) -> bool:
        return self.central == self.expected_central


def center_witness(A: RtmAlgebra, sample: Sequence = (1,)) -> list[CenterWitness]:
    """Check x_j^- x_j^+ against every sampled generator for each j."""
    gens = _sample_generators(A, sample)
    out = []
    for j in range(A.k):
        z = A.x_minus(j) * A.x_plus(j)
        comms = {name: commutator(z, g) for name, g in gens.items()}
        out.append(CenterWitness(j + 1, S.is_zero(A.c[j]), comms))
    return out
