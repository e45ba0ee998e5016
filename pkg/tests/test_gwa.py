import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

import frozen_oracles as O
from rta import cartan as C
from rta import gwa as G
from rta import scalar as S
from rta.cartan import BaseElement
from rta.errors import ValidationError
from rta.expr import parse_element

PRESET_NAMES = ["weyl", "dispin", "smith(h^2)", "uq-sl2", "woronowicz", "jing-zhang", "down-up(1,1,2,h^2+1)"]


def random_element(A, rng, degree=2, terms=3):
    fam = A.family
    out = A.h(0)
    for _ in range(terms):
        m, n = rng.randint(0, degree), rng.randint(0, degree)
        if isinstance(fam, C.PolyFamily):
            key = rng.randint(0, 2)
        elif isinstance(fam, C.GroupFamily):
            key = (rng.randint(-2, 2),)
        else:
            key = rng.randint(-2, 2)
        out = out + A.monomial(m, BaseElement.monomial(fam, key, rng.randint(-3, 3) or 1), n)
    return out


def test_defining_relation():
    A = G.dispin()
    assert (A.u() * A.d()).terms == {(0, 0): A.z0, (1, 1): A.z1}


def test_u_times_h_squared():
    A = G.dispin()
    h2 = parse_element("h^2", A.family)
    assert A.u() * A.h(h2) == A.h(parse_element("h^2 - 2*h + 1", A.family)) * A.u()


@pytest.mark.parametrize("mn", sorted(O.WEYL_PRODUCTS))
def test_weyl_products_match_differential_operators(mn):
    m, n = mn
    A = G.weyl()
    got = A.u(m) * A.d(n) if m and n else (A.u(m) if m else A.one()) * (A.d(n) if n else A.one())
    expected = {k: BaseElement.scalar(A.family, v) for k, v in O.WEYL_PRODUCTS[mn].items()}
    assert got.terms == expected


def test_dispin_ztilde():
    A = G.dispin()
    z = G.z_elements(A, 8)
    for n, (c0, c1) in O.DISPIN_ZTILDE.items():
        assert z.tilde[n] == BaseElement(A.family, {0: Fraction(c0), 1: Fraction(c1)})


def test_uq_ztilde2():
    A = G.uq_sl2()
    z = G.z_elements(A, 2).tilde[2]
    kp, km = (S.from_text(t, S.QQ_Q) for t in O.UQ_ZTILDE2)
    assert z.coefficient((1,)) == kp
    assert z.coefficient((-1,)) == km


def test_ztilde_one_is_z0():
    for name in PRESET_NAMES:
        A = G.preset(name)
        assert G.z_elements(A, 1).tilde[1] == A.z0


def test_anti_involution_swaps_exponents():
    A = G.dispin()
    h = C.h_var(A.family)
    x = A.monomial(2, h, 1)
    assert G.anti_involution(x) == A.monomial(1, h, 2)


def test_dispin_casimir():
    A = G.dispin()
    res = G.casimir(A)
    assert res.zeta == parse_element("(1/2)*h^2 + (1/2)*h", A.family)


def test_uq_casimir():
    A = G.uq_sl2()
    res = G.casimir(A)
    kp, km = (S.from_text(t, S.QQ_Q) for t in O.UQ_CASIMIR)
    assert res.zeta.coefficient((1,)) == kp
    assert res.zeta.coefficient((-1,)) == km
    for gen in (A.u(), A.d()):
        assert not G.commutator(res.omega, gen).terms


def test_casimir_obstruction_on_fixed_component():
    fam = C.GroupFamily(2, (), S.QQ_Q)
    A = G.quantum_gwa(fam, (S.Q**2, S.RatFunc.const(1)), "K[1] + K[0]", 1)
    res = G.casimir(A)
    assert not res.found
    assert "K[1]" in res.witness


def test_center_in_h():
    assert G.center_in_h(G.dispin()).basis == [BaseElement.scalar(G.dispin().family, 1)]


def test_finite_order_needs_flag():
    fam = C.GroupFamily(0, (2,), S.QQ)
    one = BaseElement.scalar(fam, 1)
    with pytest.raises(ValidationError):
        G.Gwa(fam, C.CharTwist((Fraction(-1),)), one, one)


def test_zero_divisor_z1_rejected():
    fam = C.PolyFamily()
    with pytest.raises(ValidationError):
        G.Gwa(fam, C.PolyAffine(Fraction(1), Fraction(-1)), C.h_var(fam), BaseElement(fam))


def test_preset_errors():
    with pytest.raises(ValidationError):
        G.preset("no-such-preset")
    with pytest.raises(ValidationError):
        G.preset("woronowicz(1)")


def test_quantum_gwa_preset_group_syntax():
    A = G.preset("quantum-gwa(Z^2xZ/2, q^2;q^3;-1, K[0]+K[1]+K[2], 1)")
    assert A.family.rank == 2 and A.family.torsion == (2,)


@pytest.mark.parametrize("name", PRESET_NAMES)
def test_u_power_d_power_coefficient(name):
    # the (n-m, 0) coordinate of u^m d^n is prod_{j=n-m}^{n-1} z~_{j+1}
    A = G.preset(name)
    z = G.z_elements(A, 8).tilde
    for n in range(9):
        for m in range(n + 1):
            expected = BaseElement.scalar(A.family, 1)
            for j in range(n - m, n):
                expected = expected * z[j + 1]
            assert (A.u(m) * A.d(n)).coefficient(n - m, 0) == expected


@given(st.integers(0, 10**6), st.sampled_from(["dispin", "uq-sl2", "continuous-hecke-gl1", "jing-zhang"]))
def test_associativity(seed, name):
    rng = random.Random(seed)
    A = G.preset(name)
    x, y, z = (random_element(A, rng) for _ in range(3))
    assert (x * y) * z == x * (y * z)


@given(st.integers(0, 10**6), st.sampled_from(["dispin", "uq-sl2", "woronowicz"]))
def test_anti_involution_reverses_products(seed, name):
    rng = random.Random(seed)
    A = G.preset(name)
    x, y = random_element(A, rng), random_element(A, rng)
    assert G.anti_involution(x * y) == G.anti_involution(y) * G.anti_involution(x)


@given(st.integers(0, 10**6), st.sampled_from(["dispin", "uq-sl2", "down-up(1,1,2,h^2+1)"]))
def test_shapovalov_is_symmetric(seed, name):
    rng = random.Random(seed)
    A = G.preset(name)
    x, y = random_element(A, rng), random_element(A, rng)
    assert G.shapovalov(x, y) == G.shapovalov(y, x)
