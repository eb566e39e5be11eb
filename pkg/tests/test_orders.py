import pytest
from hypothesis import given, settings, strategies as st

from artifact import orders
from artifact.errors import ConfigurationError
from artifact.local_fields import extension, KINDS
from artifact.series import LaurentSeries


def _elt(kE, xs, ys, vx=0, vy=0):
    return (LaurentSeries(kE, xs, vx), LaurentSeries(kE, ys, vy))


coeffs = st.lists(st.integers(0, 8), min_size=1, max_size=3)


@pytest.mark.parametrize("kind", KINDS)
def test_nrd_is_multiplicative(kind):
    alg = orders.quaternion_model(3, kind)
    kE = alg.ext.E.k

    @settings(max_examples=25)
    @given(coeffs, coeffs, coeffs, coeffs)
    def prop(a, b, c, d):
        u = _elt(kE, [x % kE.q for x in a], [x % kE.q for x in b])
        w = _elt(kE, [x % kE.q for x in c], [x % kE.q for x in d], 1, 0)
        assert alg.nrd(alg.mul(u, w)) == alg.nrd(u) * alg.nrd(w)
    prop()


@pytest.mark.parametrize("kind", KINDS)
def test_b_is_a_division_algebra_and_a_is_split(kind):
    ext = extension(3, kind)
    A, B = orders.CyclicAlgebra(ext, "A"), orders.CyclicAlgebra(ext, "B")
    kE = ext.E.k
    # anisotropy of Nrd_B on the residue classes of O_B
    for x in range(kE.q):
        for y in range(kE.q):
            if x or y:
                assert not B.nrd(_elt(kE, [x], [y])).is_zero()
    assert A.nrd(_elt(kE, [1], [1])).is_zero()


@pytest.mark.parametrize("kind", KINDS)
@pytest.mark.parametrize("name", ["A", "B"])
def test_tame_corestriction(kind, name):
    alg = orders.CyclicAlgebra(extension(3, kind), name)
    c = orders.tame_corestriction_checks(alg, 5)
    assert c["identity_on_E"] and c["order_to_O_E"]
    assert all(ok for _, _, ok in c["radical_powers"].values())
    # the trace-complement projection kills E c
    kE = alg.ext.E.k
    assert alg.trd(_elt(kE, [], [1])).is_zero()


def test_unramified_b_radical_alternates():
    alg = orders.quaternion_model(3, "unramified")
    for r in range(6):
        P = orders.radical_power(alg, r)
        assert (P.a, P.b) == (-(-r // 2), r // 2)


@pytest.mark.parametrize("kind,typ,dim,period", [("unramified", "maximal", 4, 1), ("ramified1", "Iwahori", 2, 2),
                                                 ("ramified2", "Iwahori", 2, 2)])
def test_chain_orders(kind, typ, dim, period):
    C = orders.chain_order(3, kind)
    assert C.type == typ and C.residue_dimension == dim and C.period == period
    assert C.order.closed_under_multiplication()


@pytest.mark.parametrize("q", [3, 5])
def test_dimension_table_positive_levels(q):
    for row in orders.dimension_table(q, 6):
        if row["m"] == 0:
            continue
        assert row["matches"], row
        assert row["VA_closed"] and row["VB_closed"] and row["WA_good"] and row["WB_good"] and row["chain"]


def test_dimension_table_level_zero_frozen():
    rows = {r["kind"]: r for r in orders.dimension_table(3, 0)}
    un, ra = rows["unramified"], rows["ramified1"]
    assert [un[k] for k in ("VA/WA", "VB/WB", "WA/VA+", "WB/VB+")] == [2, 1, 0, 0]
    assert [ra[k] for k in ("VA/WA", "VB/WB", "WA/VA+", "WB/VB+")] == [2, 2, 0, 0]
    assert not un["matches"] and not ra["matches"]


def test_searched_exponents_agree_for_odd_unramified():
    for m in (1, 3, 5):
        f = orders.build_filtration(m, "B", "unramified", 3)
        assert f["r"] == f["r_min"]


def test_length_requires_containment():
    alg = orders.CyclicAlgebra(extension(3, "unramified"), "A")
    big, small = orders.Module(alg, 0, 0, "big"), orders.Module(alg, 1, 2, "small")
    assert orders.length(big, small) == 3
    with pytest.raises(ConfigurationError):
        orders.length(small, big)
    with pytest.raises(ConfigurationError):
        orders.build_filtration(-1, "A", "unramified", 3)
    with pytest.raises(ConfigurationError):
        orders.CyclicAlgebra(extension(3, "unramified"), "C")


def test_delta_hom_on_scalars():
    ext = extension(3, "unramified")
    A, B = orders.CyclicAlgebra(ext, "A"), orders.CyclicAlgebra(ext, "B")
    kE = ext.E.k
    one, zero = LaurentSeries.constant(kE, 1), LaurentSeries(kE, [], 0)
    t = ext.embed(LaurentSeries.variable(ext.F.k))
    d = orders.delta_hom(A, B, (t, zero), (one, zero), 3)
    assert d.valuation() == -2 and d.leading() == 1
    # Nrd(Pi) = -t for Pi = c
    assert B.nrd((zero, one)).valuation() == 1


# Gr_m^1 orders (frozen)

@pytest.mark.parametrize("kind,m,gr,raw,gr1", [
    ("ramified1", 1, 9, 9, 3), ("ramified1", 2, 81, 27, 9), ("ramified1", 3, 9, 9, 3),
    ("unramified", 1, 729, 243, 27), ("unramified", 2, 729, 243, 27)])
def test_gr1_orders_q3(kind, m, gr, raw, gr1):
    R = orders.gr1_structure(3, kind, m)
    assert (R.gr_order, R.raw_kernel, R.gr1_order) == (gr, raw, gr1)
    assert R.diagonal == 3 ** extension(3, kind).f     # |k_E|


def test_unramified_gr1_is_nonabelian():
    R = orders.gr1_structure(3, "unramified", 1)
    assert not R.abelian and R.witness["commutator_in_kernel"]
    assert R.gr1_order == R.expected
    assert R.gr1_order * R.quotient_order == 108


def test_gr1_needs_positive_level():
    with pytest.raises(ConfigurationError):
        orders.gr1_structure(3, "unramified", 0)


def test_cross_check_with_matrix_groups():
    cc = orders.cross_check_groups(3)
    assert all(v["agree"] for v in cc.values())
    assert cc["unramified"]["Q1_order"] == 108
    assert cc["oddLevel"]["group_order"] == 6
    assert cc["evenLevel"]["group_order"] == 18
