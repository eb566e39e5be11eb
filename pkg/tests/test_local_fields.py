from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from artifact import local_fields as lf
from artifact.errors import ConfigurationError, PrecisionError
from artifact.exact_values import CyclotomicInt
from artifact.finite_field import gf
from artifact.series import LaurentSeries


def _series(k, coeffs, prec):
    return LaurentSeries(k, coeffs, 0, prec)


units3 = st.lists(st.integers(0, 2), min_size=3, max_size=3)


class TestSeries:
    k = gf(3)

    def test_inverse(self):
        x = _series(self.k, [2, 1, 0, 1], 6)
        assert (x * x.inverse()).truncate(6) == LaurentSeries.constant(self.k, 1, 6)

    def test_precision_guard(self):
        x = LaurentSeries(self.k, [1, 1], 0, 2)
        with pytest.raises(PrecisionError):
            x.coeff(3)
        with pytest.raises(PrecisionError):
            LaurentSeries(self.k, [], 0, 3).valuation()

    @given(units3, units3)
    def test_multiplication_commutes(self, a, b):
        x = _series(self.k, [1] + a, 4)
        y = _series(self.k, [2] + b, 4)
        assert x * y == y * x


@pytest.mark.parametrize("q,D", [(3, 3), (5, 2), (9, 2)])
def test_unit_log_is_a_bijection(q, D):
    ext = lf.extension(q, "ramified1")
    F = ext.F
    seen = {F.decompose(u, D)[1:] for u in F.units(D)}
    assert len(seen) == F.group_order(D)


@given(st.lists(st.integers(0, 8), min_size=4, max_size=4), st.lists(st.integers(0, 8), min_size=4, max_size=4))
def test_unit_log_is_additive(a, b):
    F = lf.extension(3, "unramified").F
    D = 4
    x = _series(F.k, [1] + [c % 3 for c in a], D + 1)
    y = _series(F.k, [1] + [c % 3 for c in b], D + 1)
    lx, ly, lxy = F.unit_log(x, D), F.unit_log(y, D), F.unit_log((x * y).truncate(D + 1), D)
    mods = [3**k for _, _, k in F.unit_basis(D)]
    assert lxy == tuple((u + v) % n for u, v, n in zip(lx, ly, mods))


@pytest.mark.parametrize("kind", lf.KINDS)
@pytest.mark.parametrize("q", [3, 5])
def test_kappa_kernel_is_the_norm_group(q, kind):
    ext = lf.extension(q, kind)
    D = 1
    kap = lf.kappa_char(ext, D)
    norms = lf.norm_subgroup(ext, D)
    for u in ext.F.units(D):
        _, z, e = ext.F.decompose(u, D)
        assert (kap.unit_exponent(u) == 0) == ((z, e) in norms)
    # index two in O_F^x exactly when E/F is ramified
    assert len(norms) * (2 if ext.ramified else 1) == ext.F.group_order(D)


@pytest.mark.parametrize("kind", lf.KINDS)
def test_norm_of_uniformizer(kind):
    ext = lf.extension(3, kind)
    n = ext.norm_of_uniformizer()
    assert n.valuation() == (1 if ext.ramified else 2)
    if not ext.ramified:
        assert n == LaurentSeries.monomial(ext.F.k, 1, 2)
    else:
        assert n.leading() == ext.F.k.neg(ext.eps)


@pytest.mark.parametrize("kind", lf.KINDS)
def test_factors_through_norm_matches_brute_force(kind):
    ext = lf.extension(3, kind)
    D = 2
    seen = {True: 0, False: 0}
    for chi in lf.characters(ext.E, D):
        for po in (False, True):
            fast = lf.factors_through_norm(chi, ext, principal_only=po)
            assert fast == lf.factors_through_norm_bruteforce(chi, ext, principal_only=po)
            seen[fast] += 1
    assert seen[True] and seen[False]


def test_character_multiplicativity():
    ext = lf.extension(3, "unramified")
    E, D = ext.E, 1
    chars = list(lf.characters(E, D))[:12]
    units = list(E.units(D))[:20]

    @given(st.sampled_from(chars), st.sampled_from(units), st.sampled_from(units))
    def prop(chi, x, y):
        lhs = chi.unit_exponent((x * y).truncate(D + 1))
        assert lhs == (chi.unit_exponent(x) + chi.unit_exponent(y)) % 1
    prop()


def test_level_and_essential_level():
    ext = lf.extension(3, "unramified")
    triv = lf.LocalCharacter.trivial(ext.E, 2)
    assert lf.level(triv) == 0
    for chi in lf.characters(ext.E, 2, theta=0):
        assert lf.essential_level(chi, ext) <= lf.level(chi)
        tw = lf.essential_twist(chi, ext)
        assert lf.level(tw) == lf.essential_level(chi, ext)


@pytest.mark.parametrize("kind,D,d", [("unramified", 4, 4), ("ramified1", 4, 2), ("ramified2", 5, 2)])
def test_twist_depth(kind, D, d):
    ext = lf.extension(3, kind)
    assert lf.twist_depth(ext, D) == d
    for tw in list(lf.base_twists(ext, D))[:5]:
        assert lf.factors_through_norm(tw, ext)


def test_minimal_representatives():
    un = lf.extension(3, "unramified")
    assert len(lf.minimal_representatives(un, 2)) == 9 // 3 - 1
    ram = lf.extension(5, "ramified2")
    assert len(lf.minimal_representatives(ram, 3)) == 4
    assert lf.minimal_representatives(ram, 2) == []
    for a in lf.minimal_representatives(un, 1):
        assert lf.is_minimal(a, un)


def test_character_from_alpha_is_in_its_family():
    ext = lf.extension(3, "unramified")
    for a in lf.minimal_representatives(ext, 2):
        chi = lf.character_from_alpha(a, ext)
        assert lf.in_X_alpha(chi, a, ext) and lf.in_Y_alpha(chi, a, ext)
        assert lf.is_admissible(chi, ext)


@pytest.mark.parametrize("p,r", [(3, 1), (5, 1), (7, 1), (3, 2)])
def test_gauss_sum_square(p, r):
    q = p**r
    tau = lf.gauss_sum_kappa(q)
    assert tau * tau == CyclotomicInt.from_int(lf.quadratic_symbol(q, gf(p, r).neg(1)) * q)


@pytest.mark.parametrize("kind,ms", [("unramified", range(0, 4)), ("ramified1", (1, 3)), ("ramified2", (1, 3))])
@pytest.mark.parametrize("q", [3, 5])
def test_delta_restricts_to_kappa(q, kind, ms):
    ext = lf.extension(q, kind)
    for m in ms:
        assert lf.check_delta_on_units(ext, m)


def test_delta_values():
    un = lf.extension(3, "unramified")
    assert lf.delta_char(un, 2).varpi_value == CyclotomicInt.from_int(-3)
    ram = lf.extension(5, "ramified1")
    with pytest.raises(ConfigurationError):
        lf.delta_char(ram, 2)
    v = lf.delta_char(ram, 1).varpi_value
    assert v * v == CyclotomicInt.from_int(5)        # kappa(-1) = 1 for q = 5


@pytest.mark.parametrize("kind", lf.KINDS)
def test_admissible_classification_depth_one(kind):
    C = lf.classify(3, kind, 1)
    assert C.unique_Y and C.conjugate_excluded
    assert C.total == lf.extension(3, kind).E.group_order(1)
    assert 0 < C.admissible < C.total


def test_bad_extension_kind():
    with pytest.raises(ConfigurationError):
        lf.extension(3, "wild")
    with pytest.raises(ConfigurationError):
        lf.extension(4, "unramified")
