"""Integer zeros of polynomial-exponential sums F(n) = sum_j p_j(n) alpha_j^n.

Bases must be distinct, nonzero, and no ratio of two bases may be a root of
unity; under these conditions F has finitely many integer zeros. The solver
scans a window exactly and proves that both tails are zero-free:

* over Q the base of largest (resp. smallest) absolute value dominates as
  n -> +oo (resp. -oo) and an explicit threshold is computed;
* over Q(q) the problem is first specialized at a rational point q0 where the
  specialized bases have pairwise distinct absolute values. Specialization is
  a ring map, so every zero of F is a zero of the specialized sum and the
  rational thresholds apply.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import scalar as S
from .errors import PoleAtPoint, ValidationError


@dataclass(frozen=True)
class PolyExpTerm:
    """p(n) * base^n with p given by ascending coefficients."""

    coeffs: tuple
    base: object


@dataclass
class PolyExpProblem:
    terms: list
    window: int = 64


@dataclass
class PolyExpSolution:
    solutions: list
    status: str  # "Certified" or "WindowOnly"
    upper_threshold: int | None = None
    lower_threshold: int | None = None
    note: str = ""


def _trim(coeffs: Sequence) -> tuple:
    c = list(coeffs)
    while c and not c[-1]:
        c.pop()
    return tuple(c)


def poly_eval(coeffs: Sequence, n):
    out = 0
    for c in reversed(coeffs):
        out = out * n + c
    return out


def evaluate(terms: Sequence[PolyExpTerm], n: int):
    total = 0
    for t in terms:
        total = total + poly_eval(t.coeffs, n) * S.power(t.base, n)
    return total


def validate(terms: Sequence[PolyExpTerm]) -> list[PolyExpTerm]:
    clean = []
    for t in terms:
        c = _trim(t.coeffs)
        if not c:
            raise ValidationError("every polynomial coefficient must be nonzero")
        if S.is_zero(t.base):
            raise ValidationError("bases must be nonzero")
        clean.append(PolyExpTerm(c, t.base))
    if not clean:
        raise ValidationError("empty polynomial-exponential sum")
    fields = {S.field_of(t.base) for t in clean}
    if len(fields) > 1:
        raise ValidationError("bases from different fields")
    for i, a in enumerate(clean):
        for b in clean[i + 1 :]:
            if a.base == b.base:
                raise ValidationError(f"repeated base {S.to_text(a.base)}")
            if S.is_root_of_unity(a.base / b.base) is not None:
                raise ValidationError(
                    f"ratio of bases {S.to_text(a.base)} and {S.to_text(b.base)} is a root of unity"
                )
    return clean


# ---------------------------------------------------------------- rational tail bounds


def _first_true(pred, start: int) -> int:
    """Smallest n >= start with pred(n), for a predicate that stays true once true."""
    if pred(start):
        return start
    step = 1
    lo = start
    while not pred(lo + step):
        lo += step
        step *= 2
    hi = lo + step
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if pred(mid):
            hi = mid
        else:
            lo = mid
    return hi


def upper_threshold(terms: Sequence[tuple[tuple, Fraction]]) -> int:
    """N >= 1 such that sum p_j(n) a_j^n != 0 for every n >= N.

    ``terms`` are (coefficients, base) over Q with pairwise distinct |base|.
    """
    k = max(range(len(terms)), key=lambda i: abs(terms[i][1]))
    star = terms[k]
    top = abs(star[1])
    cs = [abs(Fraction(c)) for c in star[0]]
    d = len(cs) - 1
    lc = cs[d]
    if d == 0:
        n_lead = 1
    else:
        n_lead = max(
            1,
            math.floor(sum(cs[:d]) / lc) + 1,
            math.ceil(sum(i * cs[i] for i in range(d)) / (d * lc)),
        )
    others = [([abs(Fraction(c)) for c in p], abs(b) / top) for i, (p, b) in enumerate(terms) if i != k]
    n0 = n_lead
    for P, ratio in others:
        e = len(P) - 1
        n0 = max(n0, _first_true(lambda n, e=e, r=ratio: (n + 1) ** e * r <= n**e, 1))

    def lead(n):
        return lc * n**d - sum(cs[i] * n**i for i in range(d))

    def rest(n):
        return sum((poly_eval(P, n) * ratio**n for P, ratio in others), Fraction(0))

    return _first_true(lambda n: rest(n) < lead(n), n0)


def _negated(terms):
    return [(tuple(c * (-1) ** i for i, c in enumerate(p)), 1 / b) for p, b in terms]


# ---------------------------------------------------------------- specialization for Q(q)

_POINTS = [Fraction(x) for x in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29)] + [
    Fraction(1, x) for x in (2, 3, 5, 7, 11)
] + [Fraction(x, y) for x, y in ((3, 2), (5, 2), (7, 3), (31, 7), (101, 3))]


def _specialize_terms(terms: Sequence[PolyExpTerm]):
    """Rational specialization with distinct absolute values, or None."""
    for q0 in _POINTS:
        try:
            spec = []
            for t in terms:
                b = S.specialize(t.base, q0)
                c = _trim([S.specialize(x, q0) for x in t.coeffs])
                if b == 0:
                    raise PoleAtPoint("base vanishes")
                if c:
                    spec.append((c, b))
        except PoleAtPoint:
            continue
        if not spec:
            continue
        absvals = [abs(b) for _, b in spec]
        if len(set(absvals)) == len(absvals):
            return q0, spec
    return None


_SIEVE_PRIME = 2**61 - 1


def _rational_scan(spec, lo: int, hi: int) -> list[int]:
    """Exact zeros in [lo, hi]; a residue test mod a large prime skips most n."""
    P = _SIEVE_PRIME
    usable = all(
        b.numerator % P and b.denominator % P and all(Fraction(c).denominator % P for c in p) for p, b in spec
    )
    if usable:
        mod_p = [[Fraction(c).numerator * pow(Fraction(c).denominator, -1, P) % P for c in p] for p, _ in spec]
        mod_b = [b.numerator * pow(b.denominator, -1, P) % P for _, b in spec]
        power = [pow(b, lo, P) for b in mod_b]
    out = []
    for n in range(lo, hi + 1):
        if usable:
            total = 0
            for j, coeffs in enumerate(mod_p):
                total += poly_eval(coeffs, n) * power[j]
                power[j] = power[j] * mod_b[j] % P
            if total % P:
                continue
        if sum((poly_eval(p, n) * b**n for p, b in spec), Fraction(0)) == 0:
            out.append(n)
    return out


def polyexp_solve(problem: PolyExpProblem) -> PolyExpSolution:
    terms = validate(problem.terms)
    W = problem.window
    if S.field_of(terms[0].base) == S.QQ:
        q0 = None
        spec = [(tuple(Fraction(c) for c in t.coeffs), Fraction(t.base)) for t in terms]
    else:
        found = _specialize_terms(terms)
        if found is None:
            sols = [n for n in range(-W, W + 1) if not evaluate(terms, n)]
            return PolyExpSolution(sols, "WindowOnly", note="no usable specialization point")
        q0, spec = found
    up = upper_threshold(spec)
    low = upper_threshold(_negated(spec))
    lo, hi = -max(W, low - 1), max(W, up - 1)
    candidates = _rational_scan(spec, lo, hi)
    if q0 is not None:
        candidates = [n for n in candidates if not evaluate(terms, n)]
    note = "rational dominance" if q0 is None else f"dominance after specializing q = {q0}"
    return PolyExpSolution(candidates, "Certified", up, low, note)


# ---------------------------------------------------------------- roots of unity among ratios


def _poly_compose_affine(coeffs: Sequence, a: int, b: int) -> tuple:
    """Coefficients of p(a*m + b) in m."""
    out = [0] * len(coeffs)
    for i, c in enumerate(coeffs):
        for k in range(i + 1):
            out[k] = out[k] + c * math.comb(i, k) * a**k * b ** (i - k)
    return tuple(out)


def solve_general(terms: Sequence[PolyExpTerm], window: int = 64) -> tuple[list[int], str]:
    """Zero set of a sum whose base ratios may include -1.

    Returns (zeros, status) with status "Certified", "WindowOnly" or
    "Infinite" (the sum vanishes identically on some residue class).
    """
    merged: dict = {}
    for t in terms:
        c = _trim(t.coeffs)
        if not c:
            continue
        if t.base in merged:
            old = merged[t.base]
            size = max(len(old), len(c))
            merged[t.base] = _trim([(old[i] if i < len(old) else 0) + (c[i] if i < len(c) else 0) for i in range(size)])
        else:
            merged[t.base] = c
    terms = [PolyExpTerm(c, b) for b, c in merged.items() if c]
    if not terms:
        return [], "Infinite"
    needs_split = any(
        S.is_root_of_unity(a.base / b.base) == 2 for i, a in enumerate(terms) for b in terms[i + 1 :]
    )
    if not needs_split:
        sol = polyexp_solve(PolyExpProblem(terms, window))
        return sol.solutions, sol.status
    zeros: list[int] = []
    status = "Certified"
    for r in (0, 1):
        sub: dict = {}
        for t in terms:
            c = tuple(x * S.power(t.base, r) for x in _poly_compose_affine(t.coeffs, 2, r))
            b2 = t.base * t.base
            old = sub.get(b2, ())
            size = max(len(old), len(c))
            sub[b2] = tuple((old[i] if i < len(old) else 0) + (c[i] if i < len(c) else 0) for i in range(size))
        sub_terms = [PolyExpTerm(_trim(c), b) for b, c in sub.items() if _trim(c)]
        if not sub_terms:
            return sorted(set(zeros)), "Infinite"
        sol = polyexp_solve(PolyExpProblem(sub_terms, window // 2 + 1))
        zeros += [2 * m + r for m in sol.solutions]
        if sol.status != "Certified":
            status = "WindowOnly"
    return sorted(zeros), status


def fit(values: dict[int, object], shape: Sequence[tuple[object, int]], field: str):
    """Fit values[n] = sum_b p_b(n) b^n with deg p_b <= d_b; exact linear solve.

    Returns the list of PolyExpTerm, or None if the fitted sum disagrees with
    any supplied value.
    """
    from .linalg import solve

    merged: dict = {}
    for b, d in shape:
        merged[b] = max(merged.get(b, -1), d)
    unknowns = [(b, i) for b, d in merged.items() for i in range(d + 1)]
    pts = sorted(values)
    if len(pts) < len(unknowns):
        raise ValidationError("not enough sample values to fit")
    used = pts[: len(unknowns)]
    matrix = [[S.coerce(n**i, field) * S.power(b, n) for b, i in unknowns] for n in used]
    rhs = [values[n] for n in used]
    sol = solve(matrix, rhs, zero=S.zero(field))
    if sol is None:
        return None
    coeffs: dict = {}
    for (b, i), c in zip(unknowns, sol):
        coeffs.setdefault(b, [S.zero(field)] * (merged[b] + 1))[i] = c
    terms = [PolyExpTerm(_trim(c), b) for b, c in coeffs.items() if _trim(c)]
    for n in pts:
        if evaluate(terms, n) != values[n]:
            return None
    return terms
