import pytest
from hypothesis import given, strategies as st

from artifact.finite_field import (AdditiveCharacter, MultiplicativeCharacter, embedding, gauss_sum, gf,
                                   parse_field_tag, prime_power, poly_roots, distinct_root_count,
                                   solve_affine_linearized)
from artifact.errors import ConfigurationError
from oracles import complex_gauss

FIELDS = [(3, 1), (3, 2), (5, 1), (5, 2), (7, 1), (3, 3), (11, 1)]
field_st = st.sampled_from(FIELDS).map(lambda pk: gf(*pk))


@st.composite
def field_and_elems(draw, n=2):
    F = draw(field_st)
    return (F,) + tuple(draw(st.integers(0, F.q - 1)) for _ in range(n))


def test_prime_power():
    assert prime_power(9) == (3, 2)
    assert prime_power(7) == (7, 1)
    with pytest.raises(ConfigurationError):
        prime_power(12)


def test_tag_round_trip():
    F = gf(3, 2)
    assert parse_field_tag(F.tag) == F


def test_multiplicative_group_is_cyclic():
    for p, k in FIELDS:
        F = gf(p, k)
        g = F.generator
        seen = {F.pow(g, i) for i in range(F.q - 1)}
        assert len(seen) == F.q - 1


def test_frobenius_fixes_prime_field():
    F = gf(5, 2)
    for x in F.subfield_elements(1):
        assert F.frobenius(x) == x
    assert sum(F.frobenius(x) == x for x in range(F.q)) == 5


def test_trace_and_norm_land_in_subfield():
    F = gf(3, 2)
    sub = set(F.subfield_elements(1))
    for x in range(F.q):
        assert F.trace(x) in sub and F.norm(x) in sub


def test_embedding_is_a_ring_map():
    small, big = gf(3, 1), gf(3, 2)
    e = embedding(small, big)
    for a in range(3):
        for b in range(3):
            assert e(small.mul(a, b)) == big.mul(e(a), e(b))
            assert e(small.add(a, b)) == big.add(e(a), e(b))


def test_sqrt_and_nonsquare():
    F = gf(7, 2)
    for x in range(1, F.q):
        if F.is_square(x):
            r = F.sqrt(x)
            assert F.mul(r, r) == x
    assert not F.is_square(F.nonsquare())


def test_gauss_sum_against_complex_oracle():
    for p, k in [(3, 1), (5, 1), (7, 1), (3, 2)]:
        F = gf(p, k)
        chi = MultiplicativeCharacter.quadratic(F)
        for a in (1, F.generator):
            g = gauss_sum(chi, AdditiveCharacter(F, a))
            assert abs(g.approx() - complex_gauss(F, (F.q - 1) // 2, a)) < 1e-8


def test_gauss_sum_absolute_value():
    F = gf(5, 2)
    for e in (1, 3, 8):
        g = gauss_sum(MultiplicativeCharacter(F, e), AdditiveCharacter(F, 1))
        assert (g * g.conjugate()).to_int() == F.q


def test_gauss_sum_needs_nontrivial_psi():
    F = gf(5)
    with pytest.raises(ConfigurationError):
        gauss_sum(MultiplicativeCharacter.quadratic(F), AdditiveCharacter(F, 0))


def test_poly_roots():
    F = gf(7)
    # (x - 1)(x - 3) = x^2 - 4x + 3, coefficients low degree first
    f = [3, F.neg(4), 1]
    assert sorted(poly_roots(F, f)) == [1, 3]
    assert distinct_root_count(F, f) == 2


def test_linearized_solver_artin_schreier():
    F = gf(3, 2)
    # x^3 - x = c has 3 solutions exactly when Tr(c) = 0
    for c in range(F.q):
        sols = solve_affine_linearized(F, [F.neg(1), 1], c)
        assert len(sols) == (3 if F.trace(c) == 0 else 0)


@given(field_and_elems(3))
def test_field_axioms(t):
    F, a, b, c = t
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    assert F.add(a, F.neg(a)) == 0
    if a:
        assert F.mul(a, F.inv(a)) == 1


@given(field_and_elems(2))
def test_frobenius_is_additive_and_multiplicative(t):
    F, a, b = t
    assert F.frobenius(F.add(a, b)) == F.add(F.frobenius(a), F.frobenius(b))
    assert F.frobenius(F.mul(a, b)) == F.mul(F.frobenius(a), F.frobenius(b))


@given(field_and_elems(1))
def test_log_exp_round_trip(t):
    F, a = t
    if a:
        assert F.exp(F.log(a)) == a


@given(field_and_elems(2))
def test_additive_character_is_a_homomorphism(t):
    F, a, b = t
    psi = AdditiveCharacter(F, 1)
    assert psi(F.add(a, b)) == psi(a) * psi(b)


@given(field_and_elems(2))
def test_quadratic_character_multiplicative(t):
    F, a, b = t
    if a and b and F.p != 2:
        assert F.quadratic_character(F.mul(a, b)) == F.quadratic_character(a) * F.quadratic_character(b)
