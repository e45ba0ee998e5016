"""Category O for rank-one triangular GWAs: Verma series, linkage, blocks.

Everything here is driven by the scalars lambda(z~_n). For a weight lambda
they satisfy, with v_j = lambda(theta^j z0) and w_i = lambda(theta^i z1),

    lambda(z~_{n+1}) = lambda(z~_n) * w_{n-1} + v_n,
    lambda(z~_{-n})  = (theta^n * lambda)(z~_n),

so long scans never build z~_n itself. When z1 is a scalar s the sequence is
polynomial-exponential in n; the bases are read off the shape of v_j, the
coefficients are fitted exactly, and the zero set is certified by the solver
in :mod:`rta.polyexp`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import cartan as C
from . import scalar as S
from .cartan import BaseElement, Weight
from .errors import NotFree, ValidationError
from .gwa import Gwa, casimir, down_up, wq
from .polyexp import PolyExpProblem, PolyExpSolution, PolyExpTerm, fit, polyexp_solve, solve_general

DEFAULT_WINDOW = 64

# ---------------------------------------------------------------- weight values


def weight_values(A: Gwa, lam: Weight, n: int) -> list:
    """[lambda(z~_0), ..., lambda(z~_n)] via the scalar recursion."""
    field = A.field
    out = [S.zero(field)]
    for k in range(n):
        w = C.evaluate(C.dual_act(A.theta, 1 - k, lam), A.z1)  # lambda(theta^(k-1) z1)
        v = C.evaluate(C.dual_act(A.theta, -k, lam), A.z0)  # lambda(theta^k z0)
        out.append(out[-1] * w + v)
    return out


def value_at(A: Gwa, lam: Weight, n: int):
    """lambda(z~_n) for any integer n."""
    if n >= 0:
        return weight_values(A, lam, n)[n]
    return weight_values(A, C.dual_act(A.theta, -n, lam), -n)[-n]


def negative_values(A: Gwa, lam: Weight, n: int) -> list:
    """[lambda(z~_0), lambda(z~_-1), ..., lambda(z~_-n)]."""
    return [S.zero(A.field)] + [value_at(A, lam, -k) for k in range(1, n + 1)]


# ---------------------------------------------------------------- zero sets


@dataclass
class SideZeros:
    """Zeros n >= 1 of lambda(z~_n) (or of lambda(z~_-n)) on one side."""

    zeros: list
    status: str  # "Certified", "Infinite" or "WindowOnly"
    scanned_to: int
    method: str = ""


@dataclass
class ZeroSet:
    positive: SideZeros
    negative: SideZeros

    @property
    def certified(self) -> bool:
        return self.positive.status == "Certified" and self.negative.status == "Certified"

    @property
    def infinite(self) -> bool:
        return "Infinite" in (self.positive.status, self.negative.status)


def _z1_scalar(A: Gwa):
    return A.z1.scalar_value() if A.z1.is_scalar() else None


def _v_shape(A: Gwa) -> list | None:
    """Bases and degree bounds of j -> lambda(theta^j z0), valid for every lambda."""
    theta = A.theta
    if isinstance(theta, C.PolyAffine):
        D = A.z0.degree() if A.z0.terms else 0
        if theta.a == 1:
            return [(S.one(A.field), D)]
        return [(S.power(theta.a, k), 0) for k in range(D + 1)]
    if isinstance(theta, C.CharTwist):
        # theta^j(g) = chi(g)^j g
        return [(C.char_value(theta.chi, g), 0) for g in A.z0.terms]
    return None


def _merge_shape(shape):
    out: dict = {}
    for b, d in shape:
        out[b] = max(out.get(b, -1), d)
    return list(out.items())


def value_shape(A: Gwa, side: int) -> list | None:
    """Bases and degree bounds of n -> lambda(z~_{side*n}) for n >= 0."""
    s = _z1_scalar(A)
    vs = _v_shape(A)
    if s is None or vs is None:
        return None
    one = S.one(A.field)
    shape = []
    for beta, d in _merge_shape(vs):
        if side > 0:
            # sum_{j<n} s^(n-1-j) v_j
            shape += [(s, d + 1)] if beta == s else [(beta, d), (s, 0)]
        else:
            # sum_{i=1..n} s^(i-1) v_{-i}
            r = s / beta
            shape += [(one, d + 1)] if r == 1 else [(r, d), (one, 0)]
    return _merge_shape(shape)


def _side_zeros(values: list, shape, field: str, window: int) -> SideZeros:
    N = len(values) - 1
    window_zeros = [n for n in range(1, N + 1) if S.is_zero(values[n])]
    if shape is None:
        return SideZeros(window_zeros, "WindowOnly", N, "no closed form for this family")
    terms = fit(dict(enumerate(values)), shape, field)
    if terms is None:
        return SideZeros(window_zeros, "WindowOnly", N, "closed-form fit failed")
    if not terms:
        return SideZeros(list(range(1, N + 1)), "Infinite", N, "identically zero")
    zeros, status = solve_general(terms, window)
    if status == "Infinite":
        return SideZeros(window_zeros, "Infinite", N, "vanishes on a residue class")
    pos = sorted(set(window_zeros) | {n for n in zeros if n > N})
    if status != "Certified":
        return SideZeros(window_zeros, "WindowOnly", N, "solver could not close the tails")
    if [n for n in zeros if 1 <= n <= N] != window_zeros:
        return SideZeros(window_zeros, "WindowOnly", N, "closed form disagrees with the scan")
    return SideZeros(pos, "Certified", N, "polynomial-exponential solver")


def _funz_side(A: Gwa, lam: Weight, side: int, N: int) -> SideZeros:
    """Direct support analysis for functions on Z with a shift and z1 = 1."""
    values = weight_values(A, lam, N) if side > 0 else negative_values(A, lam, N)
    window_zeros = [n for n in range(1, N + 1) if S.is_zero(values[n])]
    if not (A.z1.is_scalar() and A.z1.scalar_value() == 1):
        return SideZeros(window_zeros, "WindowOnly", N, "z1 is not 1")
    k = A.theta.k
    c = A.z0.terms.get(C.CONST, S.zero(A.field))
    pts = [m for m in A.z0.terms if m is not C.CONST]
    # lambda(z~_n) = n*c + #{...}: v_j = c + a_{m - j k} summed over j < n.
    # Once every point of supp z0 has been passed the sum is n*c + total.
    if not pts:
        if S.is_zero(c):
            return SideZeros(list(range(1, N + 1)), "Infinite", N, "z0 = 0")
        return SideZeros([], "Certified", N, "n * const never vanishes")
    m = lam.m
    offsets = [(m - p) * side for p in pts]
    reach = max(max(abs(o) for o in offsets) // abs(k) + 2, 1)
    if reach > N:
        values = weight_values(A, lam, reach) if side > 0 else negative_values(A, lam, reach)
        window_zeros = [n for n in range(1, reach + 1) if S.is_zero(values[n])]
    total = values[reach] - reach * c
    if S.is_zero(c):
        status = "Infinite" if S.is_zero(total) else "Certified"
        return SideZeros(window_zeros, status, max(N, reach), "support analysis")
    # n*c + total = 0 has at most one solution past the support
    extra = -total / c
    zeros = set(window_zeros)
    if isinstance(extra, Fraction) and extra.denominator == 1 and extra > reach:
        zeros.add(int(extra))
    return SideZeros(sorted(zeros), "Certified", max(N, reach), "support analysis")


def zero_set(A: Gwa, lam: Weight, N: int, window: int = DEFAULT_WINDOW) -> ZeroSet:
    """Zeros of n -> lambda(z~_n) on both sides, scanned to N and certified if possible."""
    A.require_infinite_order()
    C.validate_weight(lam, A.family)
    if isinstance(A.theta, C.ZShift):
        return ZeroSet(_funz_side(A, lam, 1, N), _funz_side(A, lam, -1, N))
    M = max(N, window)
    pos_vals = weight_values(A, lam, M)
    neg_vals = negative_values(A, lam, M)
    pos = _side_zeros(pos_vals, value_shape(A, 1), A.field, window)
    neg = _side_zeros(neg_vals, value_shape(A, -1), A.field, window)
    return ZeroSet(pos, neg)


# ---------------------------------------------------------------- finiteness


@dataclass(frozen=True)
class Finiteness:
    verdict: str  # "Finite", "Infinite" or "Unknown"
    reason: str


def closed_form_value(A: Gwa, mu: Weight, n: int):
    """mu(z~_n) for a quantum GWA with scalar z1, from the closed form.

    With alpha(g) = chi(g)^(-1) and a_g the coefficients of z0, for n > 0
        mu(z~_n)  = sum_g a_g mu(g) sum_{i<n} s^(n-1-i) alpha(g)^(-i)
        mu(z~_-n) = sum_g a_g alpha(g) mu(g) sum_{i<n} (alpha(g) s)^i
    and each inner geometric sum is summed in closed form.
    """
    if not isinstance(A.theta, C.CharTwist):
        raise ValidationError("closed form needs a group-algebra GWA")
    s = _z1_scalar(A)
    if s is None:
        raise ValidationError("closed form needs a scalar z1")
    total = S.zero(A.field)
    if n == 0:
        return total
    m = abs(n)
    for g, a in A.z0.terms.items():
        alpha = S.inv(C.char_value(A.theta.chi, g))
        mg = C.char_value(mu.values, g)
        x = alpha * s
        if n > 0:
            if x == 1:
                part = m * S.power(s, m - 1)
            else:
                part = S.power(s, m - 1) * (1 - S.power(x, -m)) / (1 - S.inv(x))
            total = total + a * mg * part
        else:
            part = m if x == 1 else (1 - S.power(x, m)) / (1 - x)
            total = total + a * alpha * mg * part
    return total


@dataclass
class KleinianPartition:
    gamma1: list
    gamma2: list
    classes: list  # list of lists of group keys


def kleinian_partition(A: Gwa) -> KleinianPartition:
    s = _z1_scalar(A)
    g1, g2, rest = [], [], []
    for g in sorted(A.z0.terms, key=A.family.sort_key):
        x = S.inv(C.char_value(A.theta.chi, g)) * s
        if x == 1:
            g1.append(g)
        elif S.is_root_of_unity(x) is not None:
            g2.append(g)
        else:
            rest.append(g)
    classes: list = []
    for g in rest:
        for cls in classes:
            ratio = C.char_value(A.theta.chi, g) / C.char_value(A.theta.chi, cls[0])
            if S.is_root_of_unity(ratio) is not None:
                cls.append(g)
                break
        else:
            classes.append([g])
    return KleinianPartition(g1, g2, classes)


def kleinian_conditions(A: Gwa, mu: Weight) -> tuple[bool, bool]:
    """Whether mu satisfies the two vanishing systems over the partition of supp z0.

    The first system asks sum_{Gamma1} a_g mu(g) = 0 and, on every class of
    Gamma3, sum a_g mu(g) / (1 - (alpha(g) s)^(-1)) = 0; the second asks
    sum a_g alpha(g) mu(g) / (1 - (alpha(g) s)^(-1)) = 0 on every class.
    """
    s = _z1_scalar(A)
    part = kleinian_partition(A)

    def alpha(g):
        return S.inv(C.char_value(A.theta.chi, g))

    def a(g):
        return A.z0.terms[g]

    def mv(g):
        return C.char_value(mu.values, g)

    first = S.is_zero(sum((a(g) * mv(g) for g in part.gamma1), S.zero(A.field)))
    second = True
    for cls in part.classes:
        t1 = sum((a(g) * mv(g) / (1 - S.inv(alpha(g) * s)) for g in cls), S.zero(A.field))
        t2 = sum((a(g) * alpha(g) * mv(g) / (1 - S.inv(alpha(g) * s)) for g in cls), S.zero(A.field))
        first = first and S.is_zero(t1)
        second = second and S.is_zero(t2)
    return first, second


def _is_down_up_shape(A: Gwa) -> bool:
    return isinstance(A.theta, C.PolyAffine) and A.theta.a == 1 and not S.is_zero(A.theta.b) and A.z1.is_scalar()


def finiteness_certificate(A: Gwa, lam: Weight, window: int = DEFAULT_WINDOW) -> Finiteness:
    """Decide whether the linkage class of lambda is finite."""
    A.require_infinite_order()
    if not isinstance(C.is_free(A.theta, lam), C.Free):
        return Finiteness("Unknown", "weight is not free")
    if not A.z0.terms:
        return Finiteness("Infinite", "z0 = 0, so every z~_n vanishes")
    if _is_down_up_shape(A):
        s = A.z1.scalar_value()
        if s == 1:
            return Finiteness("Finite", "theta is a translation and z1 = 1 in characteristic 0")
        if S.is_root_of_unity(s) is None:
            return Finiteness("Finite", "theta is a translation and z1 is not a root of unity")
    if isinstance(A.theta, C.CharTwist) and A.z1.is_scalar():
        if C.char_order(A.theta.chi) is None:
            checks = [kleinian_conditions(A, C.dual_act(A.theta, k, lam)) for k in (0, 1)]
            if not any(x or y for x, y in checks):
                return Finiteness("Finite", "neither vanishing system holds on the orbit")
            if any(checks[0]):
                return Finiteness("Infinite", "a vanishing system holds at lambda")
    zs = zero_set(A, lam, window, window)
    if zs.infinite:
        return Finiteness("Infinite", "lambda(z~_n) vanishes on an infinite set")
    if zs.certified:
        return Finiteness("Finite", "polynomial-exponential zero set is certified")
    return Finiteness("Unknown", "only a window scan is available")


# ---------------------------------------------------------------- Verma and linkage


@dataclass
class VermaReport:
    weight: Weight
    freeness: object
    bound: int
    maximal_degrees: list
    composition_factors: list
    series_certified: bool


def verma_report(A: Gwa, lam: Weight, N: int, window: int = DEFAULT_WINDOW) -> VermaReport:
    A.require_infinite_order()
    C.validate_weight(lam, A.family)
    verdict = C.is_free(A.theta, lam)
    if not isinstance(verdict, C.Free):
        return VermaReport(lam, verdict, N, [], [lam], False)
    zs = zero_set(A, lam, N, window)
    degrees = [n for n in zs.positive.zeros if 1 <= n <= N]
    factors = [lam] + [C.dual_act(A.theta, -n, lam) for n in degrees]
    certified = zs.positive.status == "Certified" and all(n <= N for n in zs.positive.zeros)
    return VermaReport(lam, verdict, N, degrees, factors, certified)


@dataclass
class LinkageClass:
    indices: list  # orbit indices n with member theta^(-n) * lambda, ascending
    members: list
    status: str  # "Certified" or "WindowOnly"
    bound: int


def linkage_class(A: Gwa, lam: Weight, N: int, window: int = DEFAULT_WINDOW) -> LinkageClass:
    A.require_infinite_order()
    if not isinstance(C.is_free(A.theta, lam), C.Free):
        raise NotFree(f"weight {lam} is not free under theta")
    zs = zero_set(A, lam, N, window)
    pos = [n for n in zs.positive.zeros if n <= N]
    neg = [n for n in zs.negative.zeros if n <= N]
    indices = sorted([-n for n in neg] + [0] + pos)
    certified = zs.certified and all(n <= N for n in zs.positive.zeros + zs.negative.zeros)
    members = [C.dual_act(A.theta, -n, lam) for n in indices]
    return LinkageClass(indices, members, "Certified" if certified else "WindowOnly", N)


# ---------------------------------------------------------------- blocks


@dataclass
class BlockReport:
    representative: Weight
    members: list
    indices: list
    decomposition: list
    cartan: list
    s1: list
    s2: list
    s3: list
    s4_note: str
    certification: str
    bound: int


def mat_mul(X, Y):
    return [[sum((X[i][k] * Y[k][j] for k in range(len(Y))), 0) for j in range(len(Y[0]))] for i in range(len(X))]


def transpose(X):
    return [list(r) for r in zip(*X)]


def kron(X, Y):
    return [[X[i][j] * Y[k][l] for j in range(len(X[0])) for l in range(len(Y[0]))] for i in range(len(X)) for k in range(len(Y))]


def block_report(A: Gwa, lam: Weight, N: int, window: int = DEFAULT_WINDOW) -> BlockReport:
    link = linkage_class(A, lam, N, window)
    idx, members = link.indices, link.members
    size = len(idx)
    D = [[0] * size for _ in range(size)]
    for i in range(size):
        D[i][i] = 1
        for j in range(i + 1, size):
            if S.is_zero(value_at(A, members[i], idx[j] - idx[i])):
                D[i][j] = 1
    Cm = mat_mul(transpose(D), D)
    s1 = [mu for n, mu in zip(idx, members) if n >= 0]
    note = "no Casimir: z1 != 1 or z0 outside the image of id - theta"
    if A.z1.is_scalar() and A.z1.scalar_value() == 1:
        cas = casimir(A)
        if cas.found:
            vals = {C.evaluate(mu, cas.zeta) for mu in members}
            shared = "shared" if len(vals) == 1 else "NOT shared"
            note = f"S4 on the orbit equals S3; central character lambda(zeta) = {S.to_text(C.evaluate(lam, cas.zeta))} is {shared} by all members"
    return BlockReport(lam, members, idx, D, Cm, s1, list(members), list(members), note, link.status, N)


@dataclass
class TensorBlock:
    members: list
    decomposition: list
    cartan: list
    certification: str


def tensor_block(reports: Sequence) -> TensorBlock:
    members: list = [()]
    D = [[1]]
    Cm = [[1]]
    statuses = set()
    for r in reports:
        members = [m + (x,) for m in members for x in r.members]
        D = kron(D, r.decomposition)
        Cm = kron(Cm, r.cartan)
        statuses.add(r.certification)
    if len(statuses) > 1:
        raise ValidationError("tensor factors mix certified and window-only blocks")
    return TensorBlock(members, D, Cm, statuses.pop() if statuses else "Certified")


def projective_filtration(A: Gwa, lam: Weight, l: int) -> list:
    """Verma subquotients theta^k * lambda, 0 <= k < l, of the truncated projective."""
    if l < 1:
        raise ValidationError("l must be positive")
    if not isinstance(C.is_free(A.theta, lam), C.Free):
        raise NotFree(f"weight {lam} is not free under theta")
    return [C.dual_act(A.theta, k, lam) for k in range(l)]


# ---------------------------------------------------------------- free weights of down-up algebras


@dataclass(frozen=True)
class FreeSet:
    kind: str  # "All", "AllExcept" or "Empty"
    excluded: object = None


def downup_free_set(r, gamma) -> FreeSet:
    """Free weights h -> a of the down-up algebra with parameters r, gamma (char 0)."""
    order = S.is_root_of_unity(r)
    if order is None:
        rinv = S.inv(r)
        return FreeSet("AllExcept", gamma * rinv / (1 - rinv))
    if order == 1 and not S.is_zero(gamma):
        return FreeSet("All")
    return FreeSet("Empty")


# ---------------------------------------------------------------- functions on Z


def funz_tilde(A: Gwa, n: int) -> BaseElement:
    """z~_n for functions on Z with the shift by k and z1 = 1, summed in closed form.

    With z0 = c + sum_m a_m t[m], z~_n = n c + sum_m (sum_{i<n} a_{m - i k}) t[m].
    """
    if not isinstance(A.theta, C.ZShift) or A.z1 != BaseElement.scalar(A.family, 1):
        raise ValidationError("closed form needs the shift and z1 = 1")
    if n < 0:
        return C.apply(A.theta, funz_tilde(A, -n), n)
    k = A.theta.k
    c = A.z0.terms.get(C.CONST, 0)
    out = {C.CONST: n * c}
    for p, a in A.z0.terms.items():
        if p is C.CONST:
            continue
        for i in range(n):
            out[p + i * k] = out.get(p + i * k, 0) + a
    return BaseElement(A.family, out)


# ---------------------------------------------------------------- classical limit


@dataclass
class ClassicalLimitRow:
    k: int
    quantum: object
    specialized: object
    classical: object


@dataclass
class ClassicalLimitReport:
    x: object
    rows: list
    agree: bool
    generic_degrees: list
    specialized_degrees: list
    classical_degrees: list
    witness: object


def classical_limit(l=2, m=0, n=0, s=1, gamma=-1, f="h", x=1, k_max: int = 6) -> ClassicalLimitReport:
    """Compare lambda_q on the quantized algebra at q = 1 with lambda_x on its classical limit."""
    x = S.coerce(x if not isinstance(x, str) else Fraction(x), S.QQ)
    Aq = wq(l, m, n, s, gamma, f)
    sval = S.coerce(Fraction(s) if isinstance(s, str) else s, S.QQ)
    gval = S.coerce(Fraction(gamma) if isinstance(gamma, str) else gamma, S.QQ)
    Ac = down_up(1, gval, sval, f)
    q = S.Q
    lam_q = C.GroupWeight((1 - (q - 1) * (x * int(l) / gval),))
    lam_c = C.PolyWeight(x)
    qv = weight_values(Aq, lam_q, k_max)
    cv = weight_values(Ac, lam_c, k_max)
    rows = [ClassicalLimitRow(k, qv[k], S.specialize(qv[k], 1), cv[k]) for k in range(1, k_max + 1)]
    agree = all(r.specialized == r.classical for r in rows)
    witness = S.specialize((lam_q.values[0] - 1) / (q - 1), 1)
    return ClassicalLimitReport(
        x,
        rows,
        agree,
        [r.k for r in rows if S.is_zero(r.quantum)],
        [r.k for r in rows if S.is_zero(r.specialized)],
        [r.k for r in rows if S.is_zero(r.classical)],
        witness,
    )
