import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from helpers import (
    cyclic_group_algebra,
    finite_group_gwas,
    gwa_matrix_units,
    identity_map,
    random_commutative_instance,
    random_pbw_monomial,
)
from rta.errors import NotAnAutomorphism, NotDecreasing, StepLimit, UnitMissing
from rta.rewrite import (
    Confluent,
    FiniteAlgebra,
    InclusionAmbiguity,
    NotConfluent,
    check_confluence,
    gwa_element_to_poly,
    gwa_presentation,
    misordering_index,
    parse_poly,
    parse_presentation,
    poly_to_gwa_element,
    presentation_of_gwa,
)

WEYL = parse_presentation("generators: d u\nweights: 1 1\nu.d -> 1 + d.u")


def test_weyl_normal_form():
    nf = WEYL.normal_form({WEYL.word("u.d.d"): Fraction(1)})
    assert nf == parse_poly("2*d + d.d.u", WEYL.generators)


def test_empty_word_is_irreducible():
    assert WEYL.normal_form({(): Fraction(1)}) == {(): Fraction(1)}


def test_single_rule_without_overlap():
    pres = parse_presentation("generators: a b c\na.b -> c")
    assert isinstance(check_confluence(pres), Confluent)


def test_cyclic_group_presentation_counts():
    H = cyclic_group_algebra(3)
    theta = {"g0": {"g0": 1}, "g1": {"g2": 1}, "g2": {"g1": 1}}
    pres = gwa_presentation(H, theta, {"g0": Fraction(1)}, {"g0": Fraction(1)})
    assert len(pres.generators) == 5
    assert len(pres.rules) == 9 + 3 * 2 + 1
    assert isinstance(check_confluence(pres), Confluent)


def test_one_dimensional_h_is_weyl():
    H = FiniteAlgebra(["1"], "1", {})
    pres = gwa_presentation(H, {"1": {"1": Fraction(1)}}, {"1": Fraction(1)}, {"1": Fraction(1)})
    assert isinstance(check_confluence(pres), Confluent)
    assert pres.normal_form({pres.word("u.d.d"): Fraction(1)}) == parse_poly("2*d.1 + d.d.1.u", pres.generators)


def test_matrix_units_fail_at_u_e12_d():
    pres = gwa_presentation(*gwa_matrix_units("e11"))
    verdict = check_confluence(pres)
    assert isinstance(verdict, NotConfluent)
    assert verdict.ambiguity == "u.e12.d"
    assert verdict.difference.lstrip("-") == "e12"


def test_inclusion_ambiguity_reported():
    pres = parse_presentation("a.b.c -> 1\nb -> 1")
    assert isinstance(check_confluence(pres), InclusionAmbiguity)


def test_rules_must_decrease():
    with pytest.raises(NotDecreasing):
        parse_presentation("generators: d u\nd.u -> u.d.d")


def test_step_limit():
    pres = parse_presentation("generators: a\nweights: 0\na.a -> a")
    with pytest.raises(StepLimit):
        pres.normal_form({(0,) * 50: Fraction(1)}, max_steps=3)


def test_unit_required():
    with pytest.raises(UnitMissing):
        FiniteAlgebra(["a"], "1", {})


def test_theta_must_be_an_automorphism():
    H = cyclic_group_algebra(3)
    with pytest.raises(NotAnAutomorphism):
        gwa_presentation(H, {"g0": {"g0": 1}, "g1": {"g1": 1}, "g2": {"g1": 1}}, {"g0": 1}, {"g0": 1})


@given(st.integers(0, 10**6))
def test_commutative_h_is_confluent(seed):
    rng = random.Random(seed)
    H, theta, z0, z1 = random_commutative_instance(rng)
    assert isinstance(check_confluence(gwa_presentation(H, theta, z0, z1)), Confluent)


@given(st.integers(0, 10**6))
def test_misordering_index_decreases(seed):
    rng = random.Random(seed)
    pres = gwa_presentation(*gwa_matrix_units("e11"))
    word = tuple(rng.randrange(len(pres.generators)) for _ in range(rng.randint(1, 6)))
    current = {word: Fraction(1)}
    while True:
        w = next((w for w in current if pres.choose(w)), None)
        if w is None:
            break
        before = misordering_index(pres, current)
        lhs, pos = pres.choose(w)
        step = pres.rewrite_at(w, lhs, pos)
        c = current.pop(w)
        for v, d in step.items():
            current[v] = current.get(v, 0) + c * d
            assert pres.key(v) < pres.key(w)
        current = {v: d for v, d in current.items() if d}
        # descending-sorted lists compare like the multiset order
        assert misordering_index(pres, current) < before


@given(st.integers(0, 10**6))
def test_rewrite_agrees_with_pbw_product(seed):
    rng = random.Random(seed)
    A = rng.choice(finite_group_gwas())
    pres, keys = presentation_of_gwa(A)
    x, y = random_pbw_monomial(A, rng, 2), random_pbw_monomial(A, rng, 2)
    words = {}
    for wx, cx in gwa_element_to_poly(x, pres, keys).items():
        for wy, cy in gwa_element_to_poly(y, pres, keys).items():
            words[wx + wy] = words.get(wx + wy, 0) + cx * cy
    assert poly_to_gwa_element(pres.normal_form(words), A, pres, keys) == x * y


def test_identity_theta_map_helper():
    H = cyclic_group_algebra(2)
    assert identity_map(H) == {"g0": {"g0": 1}, "g1": {"g1": 1}}
