"""Builders shared by the module tests and the acceptance suite."""

from __future__ import annotations

import os
import random
from fractions import Fraction

from rta import cartan as C
from rta import scalar as S
from rta.cartan import BaseElement
from rta.gwa import Gwa, GwaElement
from rta.rewrite import FiniteAlgebra, gwa_presentation

ONE = Fraction(1)
SEED = int(os.environ.get("RTA_SEED", "20240601"))


def seeded(offset: int) -> random.Random:
    return random.Random(SEED * 1000 + offset)


def matrix_units() -> FiniteAlgebra:
    """2x2 matrices with basis 1, e11, e12, e21 (e22 = 1 - e11)."""
    t = {
        ("e11", "e11"): {"e11": ONE},
        ("e11", "e12"): {"e12": ONE},
        ("e11", "e21"): {},
        ("e12", "e11"): {},
        ("e12", "e12"): {},
        ("e12", "e21"): {"e11": ONE},
        ("e21", "e11"): {"e21": ONE},
        ("e21", "e12"): {"1": ONE, "e11": -ONE},
        ("e21", "e21"): {},
    }
    return FiniteAlgebra(["1", "e11", "e12", "e21"], "1", t)


def identity_map(H: FiniteAlgebra) -> dict:
    return {b: {b: ONE} for b in H.basis}


def cyclic_group_algebra(n: int) -> FiniteAlgebra:
    names = [f"g{i}" for i in range(n)]
    table = {(names[i], names[j]): {names[(i + j) % n]: ONE} for i in range(n) for j in range(n)}
    return FiniteAlgebra(names, "g0", table)


def truncated_poly(n: int) -> FiniteAlgebra:
    """F[x]/(x^n) with basis 1, x, ..., x^(n-1)."""
    names = ["1"] + [f"x{i}" for i in range(1, n)]
    table = {}
    for i in range(n):
        for j in range(n):
            table[(names[i], names[j])] = {names[i + j]: ONE} if i + j < n else {}
    return FiniteAlgebra(names, "1", table)


def random_element(H: FiniteAlgebra, rng: random.Random) -> dict:
    out = {b: Fraction(rng.randint(-3, 3)) for b in H.basis}
    out = {b: c for b, c in out.items() if c}
    return out or {H.unit: ONE}


def random_commutative_instance(rng: random.Random):
    """(H, theta, z0, z1) with H commutative: a cyclic group algebra or a truncated polynomial ring."""
    if rng.random() < 0.5:
        n = rng.randint(2, 6)
        H = cyclic_group_algebra(n)
        k = rng.choice([k for k in range(1, n) if _gcd(k, n) == 1])
        theta = {f"g{i}": {f"g{(k * i) % n}": ONE} for i in range(n)}
    else:
        n = rng.randint(2, 5)
        H = truncated_poly(n)
        c = Fraction(rng.choice([1, -1, 2, 3, Fraction(1, 2)]))
        theta = {"1": {"1": ONE}}
        theta.update({f"x{i}": {f"x{i}": c**i} for i in range(1, n)})
    return H, theta, random_element(H, rng), random_element(H, rng)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


# ---------------------------------------------------------------- GWAs over finite group algebras


def finite_group_gwas() -> list[Gwa]:
    """Five GWAs over group algebras of finite abelian groups, for the cross-oracle."""
    out = []
    specs = [
        ((2,), (Fraction(-1),), {(0,): 1, (1,): 2}, {(0,): 1}),
        ((3,), (Fraction(1),), {(1,): 1, (2,): -1}, {(0,): 2, (1,): 1}),
        ((4,), (Fraction(-1),), {(0,): 1, (2,): 3}, {(0,): 1, (1,): 2}),
        ((2, 2), (Fraction(-1), Fraction(1)), {(1, 0): 1, (0, 1): 1}, {(0, 0): 1}),
        ((2, 3), (Fraction(1), Fraction(1)), {(1, 2): 2, (0, 1): -1}, {(1, 0): 1, (0, 0): 3}),
    ]
    for torsion, chi, z0, z1 in specs:
        fam = C.GroupFamily(0, torsion, S.QQ)
        out.append(
            Gwa(
                fam,
                C.CharTwist(chi),
                BaseElement(fam, {g: Fraction(c) for g, c in z0.items()}),
                BaseElement(fam, {g: Fraction(c) for g, c in z1.items()}),
                allow_finite_order=True,
            )
        )
    return out


def random_pbw_monomial(A: Gwa, rng: random.Random, max_degree: int) -> GwaElement:
    m = rng.randint(0, max_degree)
    n = rng.randint(0, max_degree - m)
    fam = A.family
    ranges = [range(k) for k in fam.torsion]
    g = tuple(rng.choice(list(r)) for r in ranges)
    return A.monomial(m, BaseElement.monomial(fam, g, Fraction(rng.choice([1, -1, 2, 3]))), n)


def gwa_matrix_units(z0: str) -> tuple:
    H = matrix_units()
    coeffs = {}
    for part in z0.split("+"):
        c, _, name = part.strip().rpartition("*")
        coeffs[name] = Fraction(c) if c else ONE
    return H, identity_map(H), coeffs, {"1": ONE}


__all__ = [
    "matrix_units",
    "identity_map",
    "cyclic_group_algebra",
    "truncated_poly",
    "random_commutative_instance",
    "finite_group_gwas",
    "random_pbw_monomial",
    "gwa_matrix_units",
    "gwa_presentation",
]


def random_quantum_gwa(rng: random.Random):
    """A quantum GWA over Q(q)[Z^rank] with scalar z1, and a weight."""
    q = S.Q
    rank = rng.choice([1, 2])
    fam = C.GroupFamily(rank, (), S.QQ_Q)
    alpha = tuple(q ** rng.choice([1, 2, 3, -1]) * rng.choice([1, 2, Fraction(1, 2), -1]) for _ in range(rank))
    z0 = BaseElement(fam, {tuple(rng.randint(-2, 2) for _ in range(rank)): rng.choice([1, -1, 2, q]) for _ in range(3)})
    s = rng.choice([Fraction(1), Fraction(2), Fraction(-1, 3)])
    A = Gwa(fam, C.CharTwist(tuple(S.inv(x) for x in alpha)), z0, BaseElement.scalar(fam, s))
    mu = C.GroupWeight(tuple(q ** rng.randint(-3, 3) * rng.choice([1, 3, Fraction(-1, 2)]) for _ in range(rank)))
    return A, mu
