"""Acceptance suite: one test per criterion, each printing a single PASS/FAIL line."""

import contextlib
import time
from fractions import Fraction

import pytest

import brute_polyexp
import frozen_oracles as O
from helpers import (
    finite_group_gwas,
    gwa_matrix_units,
    random_commutative_instance,
    random_pbw_monomial,
    random_quantum_gwa,
    seeded,
)
from polyexp_instances import as_terms, random_instance
from rta import cartan as C
from rta import cat_o as K
from rta import gwa as G
from rta import rtm as R
from rta import scalar as S
from rta.cartan import BaseElement
from rta.polyexp import PolyExpProblem, PolyExpTerm, polyexp_solve
from rta.rewrite import (
    Confluent,
    NotConfluent,
    check_confluence,
    gwa_element_to_poly,
    gwa_presentation,
    poly_to_gwa_element,
    presentation_of_gwa,
)

q = S.Q
PRESET_NAMES = ["weyl", "dispin", "smith(h^2)", "uq-sl2", "woronowicz", "jing-zhang", "down-up(1,1,2,h^2+1)"]


@pytest.fixture
def criterion(capsys):
    @contextlib.contextmanager
    def run(number: int, title: str, limit: float | None = None):
        start = time.perf_counter()
        ok = False
        try:
            yield
            elapsed = time.perf_counter() - start
            ok = limit is None or elapsed < limit
            assert ok, f"took {elapsed:.2f} s, limit {limit} s"
        finally:
            elapsed = time.perf_counter() - start
            budget = f" (limit {limit:g} s)" if limit is not None else ""
            with capsys.disabled():
                print(f"\n{'PASS' if ok else 'FAIL'} C{number} {title}: {elapsed:.2f} s{budget}")

    return run


def poly_weight(a) -> C.PolyWeight:
    return C.PolyWeight(Fraction(a))


def test_c01_pbw_confluence(criterion):
    with criterion(1, "PBW confluence over finite-dimensional H", limit=5):
        rng = seeded(101)
        for _ in range(12):
            H, theta, z0, z1 = random_commutative_instance(rng)
            assert isinstance(check_confluence(gwa_presentation(H, theta, z0, z1)), Confluent)
        for z0 in ("e11", "e12", "e21", "e11 + e12", "2*e11 + e21", "1 + e11"):
            verdict = check_confluence(gwa_presentation(*gwa_matrix_units(z0)))
            assert isinstance(verdict, NotConfluent), z0
            assert verdict.ambiguity
        assert isinstance(check_confluence(gwa_presentation(*gwa_matrix_units("1"))), Confluent)


def test_c02_shapovalov_gram(criterion):
    with criterion(2, "Shapovalov Gram matrix is diagonal with products of z~", limit=10):
        for name in PRESET_NAMES:
            A = G.preset(name)
            z = G.z_elements(A, 8).tilde
            gram = G.shapovalov_gram(A, 8)
            prod = BaseElement.scalar(A.family, 1)
            for n in range(9):
                if n:
                    prod = prod * z[n]
                assert gram[n][n] == prod, (name, n)
                assert all(not gram[m][n] for m in range(9) if m != n), (name, n)
        A = G.dispin()
        prod = BaseElement.scalar(A.family, 1)
        for n in range(1, 9):
            c0, c1 = O.DISPIN_ZTILDE[n]
            prod = prod * BaseElement(A.family, {0: Fraction(c0), 1: Fraction(c1)})
            assert G.shapovalov(A.d(n), A.d(n)) == prod


def test_c03_pbw_coefficients(criterion):
    with criterion(3, "u^m d^n coefficients agree with products of z~"):
        for name in PRESET_NAMES:
            A = G.preset(name)
            z = G.z_elements(A, 8).tilde
            for n in range(9):
                for m in range(n + 1):
                    expected = BaseElement.scalar(A.family, 1)
                    for j in range(n - m, n):
                        expected = expected * z[j + 1]
                    assert (A.u(m) * A.d(n)).coefficient(n - m, 0) == expected, (name, m, n)
        A = G.weyl()
        for (m, n), coeffs in O.WEYL_PRODUCTS.items():
            got = (A.u(m) if m else A.one()) * (A.d(n) if n else A.one())
            assert got.terms == {k: BaseElement.scalar(A.family, v) for k, v in coeffs.items()}


def test_c04_verma_maximal_degrees(criterion):
    with criterion(4, "maximal degrees of Verma modules"):
        for m in range(7):
            rep = K.verma_report(G.uq_sl2(), C.GroupWeight((q**m,)), 50)
            assert rep.maximal_degrees == O.UQ_ZEROS[m][0] == [m + 1]
        assert K.verma_report(G.dispin(), poly_weight(1), 50).maximal_degrees == O.DISPIN_ZEROS["1"][0] == [3]


def test_c05_blocks(criterion):
    with criterion(5, "block decomposition and Cartan matrices, tensor products"):
        dispin = K.block_report(G.dispin(), poly_weight(1), 20)
        uq = K.block_report(G.uq_sl2(), C.GroupWeight((q**3,)), 20)
        for rep in (dispin, uq):
            assert len(rep.members) == 2 and rep.certification == "Certified"
            D = rep.decomposition
            assert rep.cartan == K.mat_mul(K.transpose(D), D)
        t = K.tensor_block([dispin, dispin])
        assert t.decomposition == O.KRON_DISPIN_D
        assert t.cartan == O.KRON_DISPIN


def test_c06_casimir(criterion):
    with criterion(6, "quadratic Casimir"):
        rng = seeded(106)
        for name in ("dispin", "uq-sl2"):
            A = G.preset(name)
            res = G.casimir(A)
            assert res.zeta - C.apply(A.theta, res.zeta) == A.z0
            assert not G.commutator(res.omega, A.u()).terms
            assert not G.commutator(res.omega, A.d()).terms
            z = G.z_elements(A, 10).tilde
            for _ in range(20):
                if name == "dispin":
                    lam = poly_weight(Fraction(rng.randint(-20, 20), rng.randint(1, 5)))
                else:
                    lam = C.GroupWeight((q ** rng.randint(-6, 6) * rng.choice([1, 2, Fraction(-1, 3)]),))
                for n in range(1, 11):
                    moved = C.dual_act(A.theta, -n, lam)
                    assert C.evaluate(lam, res.zeta) - C.evaluate(moved, res.zeta) == C.evaluate(lam, z[n])
        kp, km = (S.from_text(t, S.QQ_Q) for t in O.UQ_CASIMIR)
        zeta = G.casimir(G.uq_sl2()).zeta
        assert (zeta.coefficient((1,)), zeta.coefficient((-1,))) == (kp, km)


def test_c07_freeness(criterion):
    with criterion(7, "freeness of weights"):
        assert K.downup_free_set(Fraction(2), Fraction(1)) == K.FreeSet("AllExcept", Fraction(1))
        ejz = G.jing_zhang().theta
        fixed = -2 / (1 - q)
        assert C.is_free(ejz, C.PolyWeight(fixed)) == C.FixedAt(1)
        rng = seeded(107)
        for _ in range(30):
            a = S.coerce(Fraction(rng.randint(-9, 9), rng.randint(1, 4)), S.QQ_Q) + rng.choice([0, 1, -2]) * q ** rng.randint(-2, 2)
            if a != fixed:
                assert C.is_free(ejz, C.PolyWeight(a)) == C.Free(), a
        values = [Fraction(1), Fraction(-1), Fraction(2), Fraction(1, 3), q, q**2, -q, S.RatFunc.const(1)]
        for group in ("Z", "Z^2", "ZxZ/2"):
            for _ in range(15):
                fam = G.parse_group(group, S.QQ_Q)
                chi = [S.coerce(rng.choice(values), S.QQ_Q) for _ in range(fam.rank)]
                chi += [S.coerce(rng.choice([1, -1]), S.QQ_Q) for _ in fam.torsion]
                lam = C.GroupWeight(tuple(S.RatFunc.const(1) for _ in chi))
                independent = any(v != 1 and v != -1 for v in chi)
                assert isinstance(C.is_free(C.CharTwist(tuple(chi)), lam), C.Free) == independent, chi


def test_c08_finite_linkage_classes(criterion):
    with criterion(8, "finiteness of linkage classes and polynomial-exponential zeros", limit=30):
        rng = seeded(108)
        for _ in range(10):
            lam = C.GroupWeight((q ** rng.randint(-8, 8) * rng.choice([1, 3, Fraction(-1, 2)]),))
            assert K.finiteness_certificate(G.uq_sl2(), lam).verdict == "Finite"
        assert K.finiteness_certificate(G.down_up(1, 1, 1, "0"), poly_weight(3)).verdict == "Infinite"
        two_to_n = [PolyExpTerm((0, 0, -1), Fraction(1)), PolyExpTerm((1,), Fraction(2))]
        assert polyexp_solve(PolyExpProblem(two_to_n)).solutions == [2, 4]
        for i in range(50):
            spec = random_instance(seeded(1000 + i))
            sol = polyexp_solve(PolyExpProblem(as_terms(spec)))
            assert sol.status == "Certified"
            assert sol.solutions == brute_polyexp.zeros(spec), spec


def test_c09_closed_form_values(criterion):
    with criterion(9, "closed form for weight values of quantum GWAs"):
        rng = seeded(109)
        for _ in range(20):
            A, mu = random_quantum_gwa(rng)
            for n in range(-30, 31):
                assert K.closed_form_value(A, mu, n) == K.value_at(A, mu, n)


def test_c10_rtm(criterion):
    with criterion(10, "triangular monoids and their algebras", limit=30):
        monoids = [R.FreeMonoid(k) for k in (1, 2, 3)]
        monoids.append(R.AbelianCone(Fraction(1), (2,)))
        monoids.append(R.Semidirect((Fraction(2),), R.AbelianCone(Fraction(1), (2,))))
        monoids.append(R.Semidirect((Fraction(3, 2),), R.AbelianCone(Fraction(1), (2, 3))))
        for m in monoids:
            assert isinstance(R.check_cocycles(m, 3), R.Pass), m
        table = R.Sampled.integer_window(3)
        rng = seeded(110)
        keys = sorted(table.action)
        for _ in range(20):
            key = rng.choice(keys)
            value = rng.choice([v for v in table.elements if v != table.action[key]])
            assert isinstance(R.check_cocycles(table.mutate(key, value), 3), R.Fail), (key, value)
        # based exactly when the cone is eta*Z and every zeta_j is 1
        combos = [
            (R.FreeMonoid(2), True),
            (R.Semidirect((Fraction(1),), R.AbelianCone()), True),
            (R.Semidirect((Fraction(1), Fraction(1)), R.AbelianCone()), True),
            (R.Semidirect((Fraction(1),), R.AbelianCone(Fraction(1), (2,))), False),
            (R.Semidirect((Fraction(2),), R.AbelianCone(Fraction(1), (2,))), False),
            (R.Semidirect((Fraction(3, 2),), R.AbelianCone(Fraction(1), (2, 3))), False),
        ]
        for m, based in combos:
            cls = R.classify(m)
            assert (cls.based, cls.discretely_graded) == (based, based), m
        A0 = R.RtmAlgebra(monoids[4], [0])
        rep = R.maximal_vector_check(A0, (0, (0,)), depth=4)
        assert rep.maximal and rep.dim_l_is_one
        for c in (0, 1, Fraction(-2, 3)):
            (w,) = R.center_witness(R.RtmAlgebra(monoids[4], [c]))
            assert w.ok and w.central == (c == 0)


def test_c11_classical_limit(criterion):
    with criterion(11, "classical limit of the q-deformed family"):
        for x, rows in O.CLASSICAL_ROWS.items():
            rep = K.classical_limit(x=Fraction(x), k_max=6)
            assert [(r.k, S.to_text(r.specialized), S.to_text(r.classical)) for r in rep.rows] == rows
            assert rep.agree
            assert rep.specialized_degrees == rep.classical_degrees


def test_c12_rewriting_matches_pbw_product(criterion):
    with criterion(12, "rewriting normal forms agree with the PBW product"):
        rng = seeded(112)
        for A in finite_group_gwas():
            pres, keys = presentation_of_gwa(A)
            for _ in range(100):
                x, y = random_pbw_monomial(A, rng, 2), random_pbw_monomial(A, rng, 2)
                words: dict = {}
                for wx, cx in gwa_element_to_poly(x, pres, keys).items():
                    for wy, cy in gwa_element_to_poly(y, pres, keys).items():
                        words[wx + wy] = words.get(wx + wy, 0) + cx * cy
                assert poly_to_gwa_element(pres.normal_form(words), A, pres, keys) == x * y
