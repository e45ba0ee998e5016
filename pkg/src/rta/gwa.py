"""Rank-one generalized Weyl algebras W(H, theta, z0, z1).

The algebra is generated over a commutative Cartan subalgebra H by ``u`` and
``d`` subject to::

    u h = theta(h) u,    h d = d theta(h),    u d = z0 + d z1 u.

Every element has a unique expansion ``sum d^m h_{m,n} u^n`` (PBW form),
which is how :class:`GwaElement` stores it. Products are computed by a
straightening table for ``u^b d^c`` that is built only from the three
relations above; the closed-form elements ``z'_n`` and ``z~_n`` are computed
separately by :func:`z_elements` so the two can be checked against each
other.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import cartan as C
from . import scalar as S
from .cartan import BaseElement
from .errors import ValidationError
from .linalg import solve


class Gwa:
    """A rank-one generalized Weyl algebra."""

    def __init__(
        self,
        family: C.Family,
        theta: C.Endo,
        z0: BaseElement,
        z1: BaseElement,
        *,
        name: str = "custom",
        params: dict | None = None,
        allow_finite_order: bool = False,
    ):
        C.validate_endo(theta, family)
        if z0.family != family or z1.family != family:
            raise ValidationError("z0 and z1 must lie in the Cartan subalgebra")
        _check_regular(z1)
        self.family = family
        self.theta = theta
        self.z0 = z0
        self.z1 = z1
        self.name = name
        self.params = dict(params or {})
        self.finite_order = C.theta_order(theta) is not None
        if self.finite_order and not allow_finite_order:
            raise ValidationError("theta has finite order; pass allow_finite_order=True for PBW-only use")
        self._ud: dict[tuple[int, int], dict] = {}
        self._theta_cache: dict = {}

    @property
    def field(self) -> str:
        return self.family.field

    def __repr__(self):
        return f"Gwa({self.name}: theta={self.theta}, z0={self.z0}, z1={self.z1})"

    def theta_pow(self, x: BaseElement, n: int) -> BaseElement:
        if n == 0:
            return x
        key = (x, n)
        hit = self._theta_cache.get(key)
        if hit is None:
            hit = C.apply(self.theta, x, n)
            if len(self._theta_cache) < 20000:
                self._theta_cache[key] = hit
        return hit

    def require_infinite_order(self) -> None:
        if self.finite_order:
            raise ValidationError("category O routines need theta of infinite order")

    # generators
    def one(self) -> "GwaElement":
        return GwaElement(self, {(0, 0): BaseElement.scalar(self.family, 1)})

    def d(self, power: int = 1) -> "GwaElement":
        return GwaElement(self, {(power, 0): BaseElement.scalar(self.family, 1)})

    def u(self, power: int = 1) -> "GwaElement":
        return GwaElement(self, {(0, power): BaseElement.scalar(self.family, 1)})

    def h(self, x) -> "GwaElement":
        if not isinstance(x, BaseElement):
            x = BaseElement.scalar(self.family, x)
        return GwaElement(self, {(0, 0): x})

    def monomial(self, m: int, x: BaseElement, n: int) -> "GwaElement":
        return GwaElement(self, {(m, n): x})

    # straightening
    def _u_times(self, terms: dict) -> dict:
        """Left multiplication by u on PBW terms."""
        out: dict = {}
        for (i, j), k in terms.items():
            for (i2, j2), k2 in self.u_d_power(1, i).items():
                key = (i2, j2 + j)
                val = k2 * self.theta_pow(k, j2)
                out[key] = out[key] + val if key in out else val
        return {k: v for k, v in out.items() if v}

    def u_d_power(self, b: int, c: int) -> dict:
        """PBW terms of u^b d^c."""
        key = (b, c)
        hit = self._ud.get(key)
        if hit is not None:
            return hit
        one = BaseElement.scalar(self.family, 1)
        if b == 0:
            res = {(c, 0): one}
        elif c == 0:
            res = {(0, b): one}
        elif b == 1:
            # u d^c = z0 d^(c-1) + d z1 (u d^(c-1))
            res = {(c - 1, 0): self.theta_pow(self.z0, c - 1)}
            for (i, j), k in self.u_d_power(1, c - 1).items():
                nk = (i + 1, j)
                val = self.theta_pow(self.z1, i) * k
                res[nk] = res[nk] + val if nk in res else val
            res = {k: v for k, v in res.items() if v}
        else:
            res = self._u_times(self.u_d_power(b - 1, c))
        self._ud[key] = res
        return res

    def multiply(self, x: dict, y: dict) -> dict:
        out: dict = {}
        for (a, b), hx in x.items():
            for (c, e), hy in y.items():
                for (i, j), k in self.u_d_power(b, c).items():
                    key = (a + i, j + e)
                    val = self.theta_pow(hx, i) * k * self.theta_pow(hy, j)
                    out[key] = out[key] + val if key in out else val
        return {k: v for k, v in out.items() if v}


def _check_regular(z1: BaseElement) -> None:
    fam = z1.family
    if not z1:
        raise ValidationError("z1 must be a regular element (nonzero)")
    if isinstance(fam, C.FunZFamily):
        c = z1.terms.get(C.CONST, 0)
        if not c or any(not (c + v) for k, v in z1.terms.items() if k is not C.CONST):
            raise ValidationError("z1 must be nowhere zero as a function on Z")
    elif isinstance(fam, C.GroupFamily) and fam.torsion and len(z1.terms) > 1:
        free = {g[: fam.rank] for g in z1.terms}
        if len(free) > 1:
            raise ValidationError("cannot certify that z1 is regular; use a monomial or a torsion-supported z1")
        import itertools

        tors = list(itertools.product(*[range(n) for n in fam.torsion]))
        zeros = (0,) * fam.rank
        rows = []
        for t in tors:
            prod = z1 * BaseElement.monomial(fam, zeros + t)
            rows.append([prod.coefficient(next(iter(free)) + s) for s in tors])
        from .linalg import rank

        if rank(rows, len(tors)) < len(tors):
            raise ValidationError("z1 is a zero divisor")


class GwaElement:
    """Element of a GWA stored as {(m, n): h} meaning sum d^m h u^n."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: Gwa, terms: dict | None = None):
        self.algebra = algebra
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    def _wrap(self, other) -> "GwaElement":
        if isinstance(other, GwaElement):
            return other
        return self.algebra.h(other)

    def __add__(self, other):
        o = self._wrap(other)
        out = dict(self.terms)
        for k, v in o.terms.items():
            out[k] = out[k] + v if k in out else v
        return GwaElement(self.algebra, out)

    __radd__ = __add__

    def __neg__(self):
        return GwaElement(self.algebra, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._wrap(other))

    def __rsub__(self, other):
        return self._wrap(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, S.RatFunc)):
            return GwaElement(self.algebra, {k: v * other for k, v in self.terms.items()})
        o = self._wrap(other)
        return GwaElement(self.algebra, self.algebra.multiply(self.terms, o.terms))

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, S.RatFunc)):
            return self * other
        return self._wrap(other) * self

    def __pow__(self, n: int):
        out = self.algebra.one()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, GwaElement):
            return self.terms == other.terms
        return self == self._wrap(other)

    __hash__ = None

    def coefficient(self, m: int, n: int) -> BaseElement:
        return self.terms.get((m, n), BaseElement(self.algebra.family))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (m, n) in sorted(self.terms):
            h = self.terms[(m, n)]
            pieces = []
            if m:
                pieces.append("d" if m == 1 else f"d^{m}")
            if not (h == 1 and (m or n)):
                pieces.append(f"({h})")
            if n:
                pieces.append("u" if n == 1 else f"u^{n}")
            parts.append("*".join(pieces))
        return " + ".join(parts)

    def __repr__(self):
        return f"GwaElement({self})"


def commutator(x: GwaElement, y: GwaElement) -> GwaElement:
    return x * y - y * x


# ---------------------------------------------------------------- distinguished elements


@dataclass
class ZElements:
    """z'_k for 0 <= k <= n and z~_k for -n <= k <= n."""

    prime: list
    tilde: dict


def z_elements(A: Gwa, n: int) -> ZElements:
    """Evaluate the defining sums for z'_k and z~_k literally."""
    fam = A.family
    one = BaseElement.scalar(fam, 1)
    prime = [one]
    for k in range(1, n + 1):
        prime.append(prime[-1] * A.theta_pow(A.z1, k - 1))
    tilde = {0: BaseElement(fam)}
    for k in range(1, n + 1):
        acc = BaseElement(fam)
        for j in range(k):
            acc = acc + A.theta_pow(A.z0 * prime[k - 1 - j], j)
        tilde[k] = acc
    for k in range(1, n + 1):
        tilde[-k] = A.theta_pow(tilde[k], -k)
    return ZElements(prime, tilde)


def harish_chandra(x: GwaElement) -> BaseElement:
    """Projection onto the (0, 0) PBW coordinate."""
    return x.coefficient(0, 0)


def anti_involution(x: GwaElement) -> GwaElement:
    """The anti-involution fixing H and swapping u and d."""
    return GwaElement(x.algebra, {(n, m): h for (m, n), h in x.terms.items()})


def shapovalov(x: GwaElement, y: GwaElement) -> BaseElement:
    return harish_chandra(anti_involution(x) * y)


def shapovalov_gram(A: Gwa, N: int) -> list[list[BaseElement]]:
    """Gram matrix of the Shapovalov form on d^0, ..., d^N."""
    return [[shapovalov(A.d(m), A.d(n)) for n in range(N + 1)] for m in range(N + 1)]


# ---------------------------------------------------------------- Casimir


@dataclass
class CasimirResult:
    zeta: BaseElement | None
    omega: GwaElement | None
    witness: str | None = None

    @property
    def found(self) -> bool:
        return self.zeta is not None


def solve_id_minus_theta(A: Gwa, target: BaseElement):
    """Some zeta in H with zeta - theta(zeta) = target, or (None, witness)."""
    fam, theta = A.family, A.theta
    if isinstance(theta, C.PolyAffine):
        D = max(target.degree(), 0) + 1
        cols = []
        for k in range(D + 1):
            img = BaseElement.monomial(fam, k) - A.theta_pow(BaseElement.monomial(fam, k), 1)
            cols.append([img.coefficient(r) for r in range(D + 1)])
        matrix = [[cols[k][r] for k in range(D + 1)] for r in range(D + 1)]
        rhs = [target.coefficient(r) for r in range(D + 1)]
        sol = solve(matrix, rhs, zero=S.zero(fam.field))
        if sol is None:
            return None, f"{target} is not in the image of id - theta on polynomials of degree <= {D}"
        return BaseElement(fam, dict(enumerate(sol))), None
    if isinstance(theta, C.CharTwist):
        out = {}
        for g, c in target.terms.items():
            factor = 1 - C.char_value(theta.chi, g)
            if S.is_zero(factor):
                return None, f"coefficient of {fam.monomial_text(g) or '1'} is fixed by theta but nonzero"
            out[g] = c / factor
        return BaseElement(fam, out), None
    k = theta.k
    if target.terms.get(C.CONST):
        return None, "constant part of the target is fixed by the shift"
    if k == 0:
        return (BaseElement(fam), None) if not target else (None, "theta is the identity")
    step = abs(k)
    pts = sorted(m for m in target.terms if m is not C.CONST)
    sums: dict[int, object] = {}
    for m in pts:
        sums[m % step] = sums.get(m % step, 0) + target.terms[m]
    bad = [r for r, v in sums.items() if v]
    if bad:
        return None, f"values in residue class {bad[0]} mod {step} do not sum to zero"
    out = {}
    if pts:
        lo, hi = pts[0], pts[-1]
        for m in range(lo, hi + 1):
            if k > 0:
                out[m] = sum((target.terms.get(j, 0) for j in range(m, lo - 1, -step)), S.zero(fam.field))
            else:
                out[m] = sum((target.terms.get(j, 0) for j in range(m, hi + 1, step)), S.zero(fam.field))
    return BaseElement(fam, out), None


def casimir(A: Gwa) -> CasimirResult:
    """Omega = d u + zeta with (id - theta) zeta = z0; needs z1 = 1."""
    if A.z1 != 1:
        raise ValidationError("the quadratic Casimir needs z1 = 1")
    zeta, witness = solve_id_minus_theta(A, A.z0)
    if zeta is None:
        return CasimirResult(None, None, witness)
    omega = GwaElement(A, {(1, 1): BaseElement.scalar(A.family, 1), (0, 0): zeta})
    return CasimirResult(zeta, omega, None)


def center_in_h(A: Gwa, degree_bound: int = 6) -> C.CenterDescription:
    return C.center_in_h(A.theta, A.family, degree_bound)


# ---------------------------------------------------------------- presets


def _field_of_values(*vals) -> str:
    return S.QQ_Q if any(isinstance(v, S.RatFunc) for v in vals) else S.QQ


def _elem(fam, x) -> BaseElement:
    from .expr import parse_element

    if isinstance(x, BaseElement):
        if x.family != fam:
            raise ValidationError("element from a different Cartan family")
        return x
    if isinstance(x, str):
        return parse_element(x, fam)
    return BaseElement.scalar(fam, x)


def _scalar(x, field: str | None = None):
    from .expr import parse_scalar

    if isinstance(x, str):
        return parse_scalar(x, field or (S.QQ_Q if "q" in x else S.QQ))
    if field is not None:
        return S.coerce(x, field)
    return x if isinstance(x, S.RatFunc) else Fraction(x)


def weyl() -> Gwa:
    fam = C.PolyFamily()
    one = BaseElement.scalar(fam, 1)
    return Gwa(fam, C.PolyAffine(Fraction(1), Fraction(-1)), one, one, name="weyl")


def dispin() -> Gwa:
    fam = C.PolyFamily()
    return Gwa(fam, C.PolyAffine(Fraction(1), Fraction(-1)), C.h_var(fam), BaseElement.scalar(fam, 1), name="dispin")


def smith(f="h") -> Gwa:
    fam = C.PolyFamily(S.QQ_Q if isinstance(f, str) and "q" in f else S.QQ)
    one = S.one(fam.field)
    z0 = _elem(fam, f)
    return Gwa(fam, C.PolyAffine(one, -one), z0, BaseElement.scalar(fam, 1), name="smith", params={"f": str(z0)})


def down_up(r=1, gamma=1, s=1, f="h") -> Gwa:
    """theta(h) = (h + gamma)/r, z1 = 1/s, z0 = f(h)/s."""
    r, gamma, s = (_scalar(x) for x in (r, gamma, s))
    field = _field_of_values(r, gamma, s)
    if isinstance(f, str) and "q" in f:
        field = S.QQ_Q
    r, gamma, s = (S.coerce(x, field) for x in (r, gamma, s))
    if S.is_zero(r) or S.is_zero(s):
        raise ValidationError("down-up parameters r and s must be nonzero")
    fam = C.PolyFamily(field)
    fpoly = _elem(fam, f)
    theta = C.PolyAffine(S.inv(r), gamma / r)
    return Gwa(
        fam,
        theta,
        fpoly * S.inv(s),
        BaseElement.scalar(fam, S.inv(s)),
        name="down-up",
        params={"r": S.to_text(r), "gamma": S.to_text(gamma), "s": S.to_text(s), "f": str(fpoly)},
    )


def woronowicz(nu=2) -> Gwa:
    nu = _scalar(nu)
    field = _field_of_values(nu)
    if S.is_zero(nu) or S.is_root_of_unity(nu):
        raise ValidationError("nu must not be 0 or +-1")
    fam = C.PolyFamily(field)
    theta = C.PolyAffine(S.power(nu, -4), 1 + S.power(nu, -2))
    z0 = C.h_var(fam) * S.inv(nu)
    z1 = BaseElement.scalar(fam, S.power(nu, -2))
    return Gwa(fam, theta, z0, z1, name="woronowicz", params={"nu": S.to_text(nu)})


def jing_zhang(q="q") -> Gwa:
    q = _scalar(q)
    field = _field_of_values(q)
    if S.is_zero(q) or S.is_root_of_unity(q):
        raise ValidationError("q must not be 0 or a root of unity")
    fam = C.PolyFamily(field)
    h = C.h_var(fam)
    theta = C.PolyAffine(q, S.coerce(-2, field))
    z0 = h + h * h * ((1 - q) / 4)
    return Gwa(fam, theta, z0, BaseElement.scalar(fam, q), name="jing-zhang", params={"q": S.to_text(q)})


def quantum_gwa(family: C.GroupFamily, alpha: tuple, z0, z1=1, name: str = "quantum-gwa") -> Gwa:
    """W(F Gamma, rho(alpha), z0, z1): theta(g) = alpha(g)^(-1) g."""
    alpha = tuple(S.coerce(_scalar(a, family.field), family.field) for a in alpha)
    theta = C.CharTwist(tuple(S.inv(a) for a in alpha))
    return Gwa(
        family,
        theta,
        _elem(family, z0),
        _elem(family, z1),
        name=name,
        params={"alpha": [S.to_text(a) for a in alpha]},
    )


def parse_group(text: str, field: str) -> C.GroupFamily:
    """``Z^r x Z/n x ...`` (also ``1`` for the trivial group) as a GroupFamily."""
    rank, torsion = 0, []
    for part in text.replace(" ", "").split("x"):
        if part in ("", "1"):
            continue
        if part == "Z":
            rank += 1
        elif part.startswith("Z^") and part[2:].isdigit():
            rank += int(part[2:])
        elif part.startswith("Z/") and part[2:].isdigit():
            torsion.append(int(part[2:]))
        else:
            raise ValidationError(f"cannot read group factor '{part}'; use Z, Z^r or Z/n")
    return C.GroupFamily(rank, tuple(torsion), field)


def quantum_gwa_preset(group="Z", alpha="q^2", z0="(K - K^-1)/(q - q^-1)", z1="1") -> Gwa:
    """Preset form of :func:`quantum_gwa`; ``alpha`` lists generator values separated by ';'."""
    field = S.QQ_Q if "q" in f"{alpha}{z0}{z1}" else S.QQ
    fam = parse_group(str(group), field)
    return quantum_gwa(fam, tuple(a.strip() for a in str(alpha).split(";")), str(z0), str(z1))


def uq_sl2() -> Gwa:
    fam = C.GroupFamily(1, (), S.QQ_Q)
    q = S.Q
    return quantum_gwa(fam, (q**2,), "(K - K^-1)/(q - q^-1)", 1, name="uq-sl2")


def continuous_hecke_gl1(kappa="t[0]") -> Gwa:
    fam = C.FunZFamily()
    z0 = _elem(fam, kappa)
    return Gwa(fam, C.ZShift(1), z0, BaseElement.scalar(fam, 1), name="continuous-hecke-gl1", params={"kappa": str(z0)})


def wq(l=2, m=0, n=0, s=1, gamma=-1, f="h") -> Gwa:
    """Quantized down-up algebra over Q(q)[K, K^-1] with theta(K) = q^(-l) K."""
    l, m, n = int(l), int(m), int(n)
    if l <= 0:
        raise ValidationError("l must be a positive integer")
    s = S.coerce(_scalar(s), S.QQ_Q)
    gamma = S.coerce(_scalar(gamma), S.QQ_Q)
    if S.is_zero(s) or S.is_zero(gamma):
        raise ValidationError("s and gamma must be nonzero")
    q = S.Q
    fam = C.GroupFamily(1, (), S.QQ_Q)
    K = C.group_gen(fam, 0)
    arg = (K - 1) * (-gamma / (l * (q - 1)))
    fpoly = _elem(C.PolyFamily(S.QQ_Q), f)
    fval = BaseElement(fam)
    for e, c in fpoly.terms.items():
        fval = fval + (arg**e) * c
    z0 = fval * C.group_gen(fam, 0, n) * (S.power(q, m) / s)
    theta = C.CharTwist((S.power(q, -l),))
    return Gwa(
        fam,
        theta,
        z0,
        BaseElement.scalar(fam, S.inv(s)),
        name="wq",
        params={"l": l, "m": m, "n": n, "s": S.to_text(s), "gamma": S.to_text(gamma), "f": str(fpoly)},
    )


@dataclass(frozen=True)
class PresetInfo:
    factory: Callable[..., Gwa]
    params: tuple[str, ...] = ()
    defaults: tuple = ()
    description: str = ""


PRESETS: dict[str, PresetInfo] = {
    "weyl": PresetInfo(weyl, description="first Weyl algebra"),
    "dispin": PresetInfo(dispin, description="theta(h) = h - 1, z0 = h, z1 = 1"),
    "smith": PresetInfo(smith, ("f",), ("h",), "theta(h) = h - 1, z0 = f, z1 = 1"),
    "down-up": PresetInfo(down_up, ("r", "gamma", "s", "f"), (1, 1, 1, "h"), "generalized down-up algebra"),
    "woronowicz": PresetInfo(woronowicz, ("nu",), (2,), "Woronowicz deformation"),
    "jing-zhang": PresetInfo(jing_zhang, ("q",), ("q",), "theta(h) = q h - 2 over Q(q)"),
    "uq-sl2": PresetInfo(uq_sl2, description="quantum sl2 over Q(q)"),
    "quantum-gwa": PresetInfo(
        quantum_gwa_preset,
        ("group", "alpha", "z0", "z1"),
        ("Z", "q^2", "(K - K^-1)/(q - q^-1)", "1"),
        "group algebra with theta(g) = alpha(g)^-1 g",
    ),
    "continuous-hecke-gl1": PresetInfo(continuous_hecke_gl1, ("kappa",), ("t[0]",), "functions on Z with the shift"),
    "wq": PresetInfo(wq, ("l", "m", "n", "s", "gamma", "f"), (2, 0, 0, 1, -1, "h"), "quantized down-up algebra"),
}


def split_args(text: str) -> list[str]:
    """Split a comma separated argument list at parenthesis depth zero."""
    out, depth, cur = [], 0, []
    for ch in text:
        if ch == "," and depth == 0:
            out.append("".join(cur).strip())
            cur = []
            continue
        depth += ch == "("
        depth -= ch == ")"
        cur.append(ch)
    tail = "".join(cur).strip()
    if tail or out:
        out.append(tail)
    return out


def preset(spec: str) -> Gwa:
    """Build a preset from ``name`` or ``name(arg, ...)``."""
    spec = spec.strip()
    name, _, rest = spec.partition("(")
    name = name.strip()
    info = PRESETS.get(name)
    if info is None:
        raise ValidationError(f"unknown preset '{name}'; choose from {', '.join(PRESETS)}")
    args: list = []
    if rest:
        if not rest.endswith(")"):
            raise ValidationError(f"unbalanced parentheses in '{spec}'")
        args = split_args(rest[:-1])
    if len(args) > len(info.params):
        raise ValidationError(f"preset '{name}' takes at most {len(info.params)} arguments")
    return info.factory(*args)
