"""Random polynomial-exponential instances with a planted zero."""

from __future__ import annotations

import random
from fractions import Fraction

from rta.polyexp import PolyExpTerm

BASE_POOL = [Fraction(x) for x in (1, 2, 3, 5, -2, -3)] + [Fraction(1, 2), Fraction(3, 2), Fraction(-2, 3), Fraction(5, 3)]


def _ratio_ok(a: Fraction, b: Fraction) -> bool:
    return a != b and a != -b


def random_instance(rng: random.Random) -> list[tuple[list[Fraction], Fraction]]:
    while True:
        k = rng.choice([2, 2, 3])
        bases: list[Fraction] = []
        while len(bases) < k:
            b = rng.choice(BASE_POOL)
            if all(_ratio_ok(b, c) for c in bases):
                bases.append(b)
        polys = [[Fraction(rng.randint(-4, 4)) for _ in range(rng.randint(1, 3))] for _ in bases]
        n0 = rng.randint(-6, 6)
        rest = sum(
            sum(a * Fraction(n0) ** i for i, a in enumerate(p)) * b**n0 for p, b in zip(polys[1:], bases[1:])
        )
        head = sum(a * Fraction(n0) ** i for i, a in enumerate(polys[0][1:], start=1))
        polys[0][0] = -(rest / bases[0] ** n0) - head
        if all(any(p) for p in polys):
            return list(zip(polys, bases))


def as_terms(spec) -> list[PolyExpTerm]:
    return [PolyExpTerm(tuple(p), b) for p, b in spec]
