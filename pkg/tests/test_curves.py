import pytest
from hypothesis import given, strategies as st

from artifact import curves as c
from artifact.errors import BudgetError, ConfigurationError
from artifact.exact_values import CyclotomicInt
from artifact.finite_field import gf
from oracles import hyperelliptic_count, plane_count


@pytest.mark.parametrize("q,k", [(3, 1), (3, 2), (5, 1), (5, 2), (3, 4)])
def test_plane_counts_match_brute_force(q, k):
    p = 3 if q in (3, 9) else q
    F = gf(p, k * (1 if q < 9 else 2))
    for model in (c.hermitian(q), c.deligne_lusztig(q)):
        assert c.point_count(model, k) == plane_count(F, model.terms)


@pytest.mark.parametrize("q,k", [(3, 1), (3, 2), (5, 1), (5, 2), (7, 1)])
def test_hyperelliptic_counts_match_brute_force(q, k):
    assert c.point_count(c.hyperelliptic(q), k) == hyperelliptic_count(gf(q, k), q)


def test_frozen_counts():
    # brute-force values: DL has no affine F_{q^2}-points
    assert [c.point_count(c.deligne_lusztig(3), k) for k in (1, 2, 4)] == [4, 4, 28]
    assert [c.point_count(c.hermitian(3), k) for k in (1, 2, 4)] == [4, 28, 28]
    assert [c.point_count(c.hyperelliptic(3), k) for k in (1, 2)] == [4, 16]


def test_dl_and_hermitian_counts_over_even_extensions():
    # equal over F_{q^4k}; over F_{q^2k}, k odd, the DL Frobenius has q-1 more +q than -q eigenvalues
    for q, kmax in ((3, 3), (5, 2)):
        for k, dl, he in c.dl_hermitian_counts(q, kmax):
            Q = q ** (2 * k)
            if k % 2 == 0:
                assert dl == he
            else:
                assert dl == Q + 1 - (q - 1) * q**k
                assert he == Q + 1 + q * (q - 1) * q**k


def test_genus():
    assert c.genus("hermitian", 5) == 10
    assert c.genus("dl", 3) == 3
    assert c.genus("hyperelliptic", 7) == 3
    assert c.genus("p1", 3) == 0


def test_unknown_family():
    with pytest.raises(ConfigurationError):
        c.make_model("quartic", 3)


def test_enumeration_budget(monkeypatch):
    monkeypatch.setenv("ARTIFACT_BUDGET_ENUMERATION", "10")
    with pytest.raises(BudgetError):
        c.point_count(c.hermitian(3), 2)


def test_translation_fixed_point_and_multiplicity():
    m = c.hyperelliptic(3)
    F = gf(3, 2)
    t = c.translation(m, 1, F)
    fp = c.fixed_points(t)
    assert [P.chart for P, _ in fp.points] == [c.INFINITY]
    assert c.local_multiplicity(t, c.CurvePoint(c.INFINITY, (0, 0), F.tag)) == 3
    assert c.h1_trace(t) == CyclotomicInt.from_int(-1)


def test_involution_trace():
    m = c.hyperelliptic(3)
    assert c.h1_trace(c.hyperelliptic_involution(m, gf(3, 2))) == CyclotomicInt.from_int(-2)


def test_frobenius_trace_conventions():
    m = c.hyperelliptic(3)
    fr = c.frobenius_map(m, 1)
    assert c.fixed_points(fr).count == c.point_count(m, 1)
    assert c.h1_trace(fr) == CyclotomicInt.from_int(1 + 3 - 4)
    assert c.h1_trace(fr, "unweighted") == CyclotomicInt.from_int(2 - 4)


def test_hermitian_frobenius_trace_is_minus_2gq():
    for q in (3, 5):
        h = c.hermitian(q)
        g = h.genus
        assert c.h1_trace(c.frobenius_map(h, 2)) == CyclotomicInt.from_int(-2 * g * q)


def test_weil_map_variants():
    lit = c.build_weil_automorphism("unramified", 0, 3)
    swap = c.build_weil_automorphism("unramified", 0, 3, variant="swap")
    assert not c.preserves_curve(lit)
    assert c.preserves_curve(swap)
    for kind, m in (("unramified", 1), ("ramified", 0), ("ramified", 2), ("ramified", 1)):
        assert c.preserves_curve(c.build_weil_automorphism(kind, m, 3))


def test_non_automorphism_rejected():
    h = c.hermitian(3)
    with pytest.raises(ConfigurationError):
        F = gf(3, 2)
        c.projective_automorphism(h, [[1, 0, 0], [0, F.generator, 0], [0, 0, 1]], F)


def test_weil_trace_both_normalizations():
    r = c.verify_weil_trace(3, 1, 1)
    assert r.equal
    assert r.alternative["equal"] is False


@given(st.sampled_from([3, 5]), st.integers(1, 4))
def test_translations_have_one_fixed_point(q, a):
    a = a % q or 1
    m = c.hyperelliptic(q)
    F = gf(q, 2)
    t = c.translation(m, a, F)
    fp = c.fixed_points(t)
    assert fp.count == 1 and fp.lefschetz == 3


@given(st.sampled_from([3, 5, 7]), st.integers(1, 6))
def test_lefschetz_matches_h1_trace(q, a):
    a = a % q or 1
    m = c.hyperelliptic(q)
    t = c.translation(m, a, gf(q, 2))
    # L = 2 - tr(H^1) for a linear automorphism
    assert c.h1_trace(t) == CyclotomicInt.from_int(2 - c.lefschetz_number(t))


@given(st.sampled_from([3, 5]), st.integers(1, 24))
def test_hermitian_automorphisms_preserve_points(q, seed):
    h = c.hermitian(q)
    F = gf(q, 2)
    # (X, Y, Z) -> (X, b Y, Z) with b^(q+1) = 1 is an automorphism
    b = F.pow(F.generator, (q - 1) * (seed % (q + 1)))
    aut = c.projective_automorphism(h, [[1, 0, 0], [0, b, 0], [0, 0, 1]], F)
    pts = set(c.enumerate_points(h, 2))
    assert {aut.apply(P, F) for P in pts} == pts
