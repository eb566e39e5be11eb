import pytest
from hypothesis import given, settings, strategies as st

from artifact import finite_groups as fg
from artifact.errors import ConfigurationError
from artifact.exact_values import CyclotomicInt
from artifact.finite_field import gf, MultiplicativeCharacter

from oracles import element_inner_product


@pytest.mark.parametrize("build,order,classes", [
    (fg.build_Q, 324, 42), (fg.build_Q1, 108, 14), (fg.build_levelzero_G1, 192, 32), (fg.gl2_group, 48, 8)])
def test_group_orders_q3(build, order, classes):
    G = build(3)
    assert G.order == order
    assert len(G.conjugacy_classes()) == classes
    assert sum(len(c) for c in G.conjugacy_classes()) == order
    assert G.verify()


def test_q1_structure():
    G = fg.build_Q1(3)
    P = fg.center_P(G)
    assert len(P) == 3 and fg.is_central(G, P)
    assert len(fg.torus_D(G)) == 4                  # the norm-one torus of F_9
    assert len(fg.heisenberg_H(G)) == 27
    x, y, c = fg.commutator_witness(G)
    assert c in set(P) and c != G.identity
    assert not G.is_abelian()


def test_hermitian_action_is_a_homomorphism():
    G = fg.build_Q1(3)
    assert fg.hermitian_action(G).verify_homomorphism()
    with pytest.raises(ConfigurationError):
        fg.hermitian_action(fg.build_Q(3))


def test_h1_character_is_a_class_function():
    act = fg.hermitian_action(fg.build_Q1(3))
    chi = fg.h1_character(act)
    assert chi.degree() == CyclotomicInt.from_int(6)
    assert fg.check_class_function(act, chi, limit=3)


def test_inner_product_matches_element_sum():
    G = fg.build_Q1(3)
    chi = fg.h1_character(fg.hermitian_action(G))
    tau = fg.extract_tau_alpha(chi, 3)
    for f, g in ((chi, chi), (chi, tau), (tau, tau)):
        exact = fg.inner_product(f, g)
        assert abs(exact.approx() - element_inner_product(G, f, g)) < 1e-9


def test_characters_of_gl2_are_orthonormal():
    G = fg.gl2_group(3)
    cusp = [fg.cuspidal_character(G, t) for t in fg.regular_thetas(3)]
    one, zero = CyclotomicInt.from_int(1), CyclotomicInt.from_int(0)
    for a in cusp:
        assert fg.inner_product(a, a) == one
        assert a.degree() == CyclotomicInt.from_int(2)
        assert fg.inner_product(a, fg.ClassFunction.trivial(G)) == zero
    with pytest.raises(ConfigurationError):
        fg.cuspidal_character(G, MultiplicativeCharacter(gf(3, 2), 4))


@settings(max_examples=15)
@given(st.integers(1, 7), st.integers(1, 7))
def test_cuspidal_twist_by_norm_characters(e, f):
    # theta and theta^q give the same cuspidal character
    F2 = gf(3, 2)
    if (e * 3 - e) % 8 == 0:
        return
    G = fg.gl2_group(3)
    a = fg.cuspidal_character(G, MultiplicativeCharacter(F2, e))
    b = fg.cuspidal_character(G, MultiplicativeCharacter(F2, (3 * e) % 8))
    assert a == b


@pytest.mark.parametrize("q", [3, 5])
def test_hermitian_report(q):
    R = fg.hermitian_decomposition(q)
    assert R.chi.degree().to_int() == q * (q - 1)
    assert len(R.additive_reps) == q - 1
    assert len(R.multiplicative_reps) == q
    assert all(R.norms[a] == 1 for a in R.additive_reps)
    assert all(R.torus_traces[a] and R.uniqueness[a] for a in R.additive_reps)
    # frozen: each tau_alpha has dimension q, and the additive classes exhaust H^1
    assert all(R.dims[a] == q for a in R.taus)
    assert R.sum_additive and not R.sum_multiplicative


@pytest.mark.parametrize("q", [3, 5])
def test_dl_report(q):
    R = fg.dl_decomposition(q)
    assert R.chi.degree().to_int() == q * (q - 1)
    assert R.thetas == list(range(1, q + 1))
    assert R.orthonormal
    assert R.dual.multiplicities == [1] * q and R.dual.residual_zero
    assert not R.plain.residual_zero
    assert R.kernel == q - 1                     # scalars (z, z) with z in F_q^x
    assert all(m == 1 for _, m in R.all_regular)


def test_dl_action():
    G = fg.build_levelzero_G1(3)
    act = fg.dl_action(G)
    assert act.verify_homomorphism()
    assert fg.check_class_function(act, fg.h1_character(act), limit=2)


@pytest.mark.parametrize("q", [3, 5])
def test_hyperelliptic_report(q):
    R = fg.hyperelliptic_decomposition(q)
    assert R.decomposition.multiplicities == [0] + [1] * (q - 1)
    assert R.decomposition.residual_zero
    assert R.infinity_multiplicities == [3] * (q - 1)
    sgn = R.sign_decomposition.multiplicities
    # each nontrivial psi appears with the sign character of the involution
    assert sgn[0::2] == [0] * q and sgn[1::2] == [0] + [1] * (q - 1)


@pytest.mark.parametrize("case,order,abelian", [("level0", 16, False), ("evenLevel", 18, False),
                                                ("oddLevel", 6, True)])
def test_ramified_quotients(case, order, abelian):
    G = fg.build_ramified_quotient(3, case)
    assert G.order == order and G.is_abelian() == abelian and G.verify()
    assert fg.ramified_action(G, case).verify_homomorphism()


def test_alpha_representatives():
    assert fg.alpha_representatives(3) == [3, 6]
    assert len(fg.alpha_representatives(5, "multiplicative")) == 5
    with pytest.raises(ConfigurationError):
        fg.alpha_representatives(3, "other")
    with pytest.raises(ConfigurationError):
        fg.psi_alpha(fg.build_Q1(3), 1)


def test_class_function_shape():
    G = fg.gl2_group(3)
    with pytest.raises(ConfigurationError):
        fg.ClassFunction(G, [1, 2])
    reg = fg.ClassFunction.regular(G)
    assert fg.inner_product(reg, fg.ClassFunction.trivial(G)) == CyclotomicInt.from_int(1)
