"""Presheaf carriers, Yoneda machinery, Kan/Isbell adjunctions, transposes."""

import numpy as np
import pytest

from quantcat import CapExceeded, TypedSet, catalog, check_category
from quantcat.presheaf import (
    P,
    Pd,
    clear_cache,
    co_yoneda,
    f_dag_lower,
    f_dag_upper,
    f_lower,
    f_upper,
    inf_P,
    inf_Pd,
    isbell,
    kan,
    sup_P,
    sup_Pd,
    transpose_to_P,
    transpose_to_Pd,
    untranspose_P,
    untranspose_Pd,
    yoneda,
)
from quantcat.qcat import (
    QFunctor,
    check_adjoint,
    check_fully_faithful,
    functor_leq,
    identity_functor,
    is_separated,
    singleton,
)
from quantcat.qdist import QDistributor, compose, cograph, dist_eq, dist_leq, graph, identity_dist
from quantcat.rand import SplitMix64, random_distributor

B2 = catalog("boolean2")


def cat2(Q, u, v, name="X"):
    top = int(Q.top[0, 0])
    return check_category(Q, TypedSet(["x", "y"], [0, 0]),
                          [[top, u], [v, top]], name)


def D2():
    return cat2(B2, 0, 0, "D2")


def C2():
    return cat2(B2, 1, 0, "C2")


def as_set(PX, i):
    """Boolean presheaf as the set of carrier elements it contains."""
    return frozenset(x for x, v in zip(PX.base_X.ids, PX.vectors[i]) if v == 1)


def test_carrier_counts_boolean2():
    assert P(D2()).n == 4            # all subsets
    assert P(C2()).n == 3            # downsets of a 2-chain
    pt = singleton(B2)
    assert P(pt).n == 2 and Pd(pt).n == 2


def test_carriers_are_separated_categories():
    for X in (D2(), C2()):
        assert is_separated(P(X))
        assert is_separated(Pd(X))


def test_copresheaf_carrier_order_reversed():
    # in Pd(pt) the underlying order is the reverse of the entrywise one
    pt = singleton(B2)
    PdX = Pd(pt)
    from quantcat.qcat import underlying_order
    order = underlying_order(PdX)
    lo = PdX.index_of(0, np.array([0], dtype=np.int32))
    hi = PdX.index_of(0, np.array([1], dtype=np.int32))
    assert order[hi, lo] and not order[lo, hi]


def test_yoneda_values():
    X = D2()
    y = yoneda(X)
    assert as_set(P(X), y(0)) == {"x"}
    assert as_set(P(X), y(1)) == {"y"}
    Xc = C2()
    yc = yoneda(Xc)
    assert as_set(P(Xc), yc(1)) == {"x", "y"}


def test_yoneda_lemma_exact():
    # hom(y x, sigma) = sigma(x), both sides computed independently
    for X in (D2(), C2(), cat2(catalog("lukasiewicz", 3), 1, 0)):
        PX = P(X)
        y = yoneda(X)
        for x in range(X.n):
            assert np.array_equal(PX.hom[y(x), :], PX.vectors[:, x])
        assert check_fully_faithful(y)[0]
        yd = co_yoneda(X)
        PdX = Pd(X)
        for x in range(X.n):
            assert np.array_equal(PdX.hom[:, yd(x)], PdX.vectors[:, x])
        assert check_fully_faithful(yd)[0]


def test_sup_is_union_over_discrete():
    X = D2()
    PX, s = P(X), sup_P(X)
    PPX = s.source
    for i in range(PPX.n):
        members = [j for j in range(PX.n) if PPX.vectors[i, j] == 1]
        expected = frozenset().union(*[as_set(PX, j) for j in members]) \
            if members else frozenset()
        assert as_set(PX, s(i)) == expected


def test_sup_yoneda_triangle():
    for X in (D2(), C2()):
        s, yP = sup_P(X), yoneda(P(X))
        assert s.source.same_as(yP.target)
        assert np.array_equal(yP.then(s).table, identity_functor(P(X)).table)


def test_sup_on_double_chain_of_point():
    # PPX over the point is a 3-chain; sup collapses it onto the 2-chain
    pt = singleton(B2)
    s = sup_P(pt)
    PX, PPX = P(pt), s.source
    assert PPX.n == 3
    empty = PX.index_of(0, np.array([0], dtype=np.int32))
    full = PX.index_of(0, np.array([1], dtype=np.int32))
    expect = {(0, 0): empty, (1, 0): empty, (1, 1): full}
    for i in range(PPX.n):
        key = tuple(int(v) for v in PPX.vectors[i])
        assert s(i) == expect[key]


def test_inf_P_is_intersection_on_selected_family():
    X = D2()
    PX = P(X)
    inf = inf_P(X)
    PdPX = inf.source
    sx = PX.index_of(0, np.array([1, 0], dtype=np.int32))
    sxy = PX.index_of(0, np.array([1, 1], dtype=np.int32))
    tau = np.zeros(PX.n, dtype=np.int32)
    tau[sx] = 1
    tau[sxy] = 1
    i = PdPX.index_of(0, tau)
    assert as_set(PX, inf(i)) == {"x"}


def test_inf_sup_triangles_on_derived_carriers():
    X = C2()
    assert np.array_equal(
        co_yoneda(P(X)).then(inf_P(X)).table, identity_functor(P(X)).table)
    assert np.array_equal(
        yoneda(Pd(X)).then(sup_Pd(X)).table, identity_functor(Pd(X)).table)
    assert np.array_equal(
        co_yoneda(Pd(X)).then(inf_Pd(X)).table, identity_functor(Pd(X)).table)


def test_induced_functors_and_inclusion_example():
    X = C2()
    pt = singleton(B2)
    inc = QFunctor(pt, X, [0], "inc")
    fl = f_lower(inc)
    img = as_set(P(X), fl(P(pt).index_of(0, np.array([1], dtype=np.int32))))
    assert img == {"x"}
    # identity lifts to identities
    assert np.array_equal(f_lower(identity_functor(X)).table,
                          identity_functor(P(X)).table)
    # naturality of yoneda: y_Y . f = f_! . y_X
    for f in (inc, identity_functor(X)):
        lhs = f.then(yoneda(f.target))
        rhs = yoneda(f.source).then(f_lower(f))
        assert lhs.equals(rhs)
    # dual naturality: yd_Y . f = f_+ . yd_X
    lhs = inc.then(co_yoneda(X))
    rhs = co_yoneda(pt).then(f_dag_lower(inc))
    assert lhs.equals(rhs)


def test_induced_adjunctions_hold():
    X, pt = C2(), singleton(B2)
    inc = QFunctor(pt, X, [0], "inc")
    assert check_adjoint(f_lower(inc), f_upper(inc))
    assert check_adjoint(f_dag_upper(inc), f_dag_lower(inc))


def test_kan_identity_and_cograph():
    X = D2()
    ku, kl, kdl, kdu = kan(identity_dist(X))
    assert np.array_equal(ku.table, identity_functor(P(X)).table)
    assert np.array_equal(kdu.table, identity_functor(Pd(X)).table)
    # kan of a cograph is f_lower
    pt = singleton(B2)
    inc = QFunctor(pt, X, [0], "inc")
    assert np.array_equal(kan(cograph(inc))[0].table, f_lower(inc).table)


def test_kan_full_relation_sends_nonempty_to_full():
    X = D2()
    full = QDistributor(X, X, [[1, 1], [1, 1]], validated=True, name="full")
    ku = kan(full)[0]
    PX = ku.source
    for i in range(PX.n):
        if as_set(PX, i):
            assert as_set(PX, ku(i)) == {"x", "y"}
        else:
            assert as_set(PX, ku(i)) == frozenset()


def test_isbell_unit_on_representables():
    for X in (D2(), C2()):
        up, down = isbell(identity_dist(X))
        y, yd = yoneda(X), co_yoneda(X)
        assert y.then(up).equals(yd)
        # unit of the adjunction: down . up >= id
        assert functor_leq(identity_functor(P(X)), up.then(down))


def test_transposes_and_round_trips():
    X = D2()
    assert transpose_to_P(identity_dist(X)).equals(yoneda(X))
    assert transpose_to_Pd(identity_dist(X)).equals(co_yoneda(X))
    rng = SplitMix64(23)
    Y = C2()
    for _ in range(6):
        phi = random_distributor(rng, X, Y)
        assert dist_eq(untranspose_P(transpose_to_P(phi)), phi)
        assert dist_eq(untranspose_Pd(transpose_to_Pd(phi)), phi)
        # transpose = kan^ . yoneda
        assert transpose_to_P(phi).equals(yoneda(Y).then(kan(phi)[0]))
    full = QDistributor(X, X, np.ones((2, 2), np.int32), validated=True)
    tr = transpose_to_P(full)
    assert all(as_set(P(X), tr(j)) == {"x", "y"} for j in range(2))


def test_lax_idempotency_of_presheaf_construction():
    for X in (D2(), C2()):
        assert functor_leq(f_lower(yoneda(X)), yoneda(P(X)))
        assert functor_leq(co_yoneda(Pd(X)), f_dag_lower(co_yoneda(X)))


def test_cap_exceeded():
    clear_cache()
    with pytest.raises(CapExceeded) as e:
        P(D2(), cap=2)
    assert e.value.cap == 2 and e.value.estimated >= 3
    clear_cache()
    # cached carrier still respects a smaller later cap
    P(D2())
    with pytest.raises(CapExceeded):
        P(D2(), cap=1)
    clear_cache()


def test_enumeration_is_reproducible():
    X = cat2(catalog("lukasiewicz", 3), 1, 0)
    v1 = P(X).vectors.copy()
    t1 = P(X).types.copy()
    clear_cache()
    assert np.array_equal(P(X).vectors, v1)
    assert np.array_equal(P(X).types, t1)
    # canonical order: types ascending, lexicographic vectors inside a type
    v = P(X).vectors
    for i in range(1, v.shape[0]):
        assert tuple(v[i - 1]) < tuple(v[i]) or t1[i - 1] < t1[i]
