"""Lax algebras, their distributor form, and the structure converters."""

import numpy as np
import pytest

from quantcat import TypedSet, catalog, check_category
from quantcat.algebras import (
    ClosureSpace,
    DistMonoid,
    InteriorSpace,
    LaxAlgebra,
    PdP_algebra_to_closureP,
    TQCategory,
    TQ_from_algebra,
    algebra_from_TQ,
    algebra_ok,
    algebra_to_closure,
    algebra_to_interior,
    algebra_to_monoid,
    check_TQ_category,
    check_TQ_functor,
    check_closure_operation,
    check_dist_monoid,
    check_lax_algebra,
    check_lax_hom,
    closureP_to_PdP_algebra,
    closure_to_algebra,
    initial_structure,
    interior_to_algebra,
    monoid_to_algebra,
    mutate_closure_break_idempotence,
    mutate_closure_break_inflation,
    mutate_monoid_break_reflexivity,
    random_closure_operation,
    structure_identity_Pd,
    structure_identity_PPd,
    structure_identity_PdP,
    structure_map_is_right_adjoint,
)
from quantcat.laws import (
    extension_from_law,
    law_Id,
    law_P,
    law_Pd,
    law_PPd,
    law_PdP,
)
from quantcat.monads import monad_P
from quantcat.presheaf import P, Pd, yoneda
from quantcat.qcat import QFunctor, enumerate_functors, identity_functor, singleton
from quantcat.qdist import QDistributor, bottom_dist, dist_eq, graph, identity_dist
from quantcat.rand import SplitMix64, random_monoid

B2 = catalog("boolean2")


def cat2(Q, u, v, name="X"):
    top = int(Q.top[0, 0])
    return check_category(Q, TypedSet(["x", "y"], [0, 0]),
                          [[top, u], [v, top]], name)


def D2():
    return cat2(B2, 0, 0, "D2")


def passes(recs):
    return all(r["verdict"] == "pass" for r in recs)


def downset_closure(X):
    """On P(D2): add x whenever y is present."""
    PX = P(X)
    table = np.zeros(PX.n, dtype=np.int64)
    for i in range(PX.n):
        v = PX.vectors[i].copy()
        if v[1] == 1:
            v[0] = 1
        table[i] = PX.index_of(int(PX.types[i]), v)
    return QFunctor(PX, PX, table, "adjoin-x")


# --- self-distribution: closure spaces ------------------------------------

def test_identity_closure_valid_both_ways():
    X = D2()
    c = identity_functor(P(X))
    assert check_closure_operation(c) == (True, None)
    assert passes(check_lax_algebra(closure_to_algebra(
        ClosureSpace(X, c), law_P())))


def test_downset_closure_accepted_both_ways():
    X = D2()
    c = downset_closure(X)
    assert check_closure_operation(c)[0]
    A = closure_to_algebra(ClosureSpace(X, c), law_P())
    assert passes(check_lax_algebra(A))
    assert algebra_to_closure(A).c.equals(c)


def test_random_closures_verdicts_agree():
    X = cat2(catalog("lukasiewicz", 3), 1, 0, "L")
    rng = SplitMix64(2024)
    law = law_P()
    for _ in range(10):
        c = random_closure_operation(rng, X, "P")
        assert check_closure_operation(c)[0]
        assert passes(check_lax_algebra(closure_to_algebra(
            ClosureSpace(X, c), law)))


def test_broken_idempotence_rejected_with_matching_witness():
    X = cat2(catalog("chain_min", 3), 0, 0, "G")
    rng = SplitMix64(77)
    law = law_P()
    h = mutate_closure_break_idempotence(rng, X, "P")
    assert h is not None
    ok, wit = check_closure_operation(h)
    assert not ok and "idempotent-at" in wit
    A = closure_to_algebra(ClosureSpace(X, h), law)
    recs = check_lax_algebra(A)
    assert any(r["verdict"] == "fail" and r["axiom"] == "lax-mult"
               for r in recs)
    # witness correspondence: the closure witness transported along the
    # Yoneda embedding of PX refutes the lax multiplication law
    PX = P(X)
    sigma = list(PX.ids).index(wit["idempotent-at"])
    lhs = h(h(sigma))
    rhs = h(sigma)
    assert lhs != rhs  # exactly the two sides of the mult law at y(sigma)


def test_broken_inflation_rejected_both_sides():
    X = D2()
    c = mutate_closure_break_inflation(X, "P")
    ok, wit = check_closure_operation(c)
    assert not ok and "inflationary-at" in wit
    recs = check_lax_algebra(closure_to_algebra(ClosureSpace(X, c), law_P()))
    assert any(r["verdict"] == "fail" and r["axiom"] == "lax-unit"
               for r in recs)


# --- copresheaf law: monoids in the distributor quantaloid -----------------

def test_monoid_identity_round_trip():
    X = cat2(B2, 1, 0, "C2")
    mon = DistMonoid(X, identity_dist(X))
    assert check_dist_monoid(mon.alpha)[0]
    A = monoid_to_algebra(mon, law_Pd())
    assert passes(check_lax_algebra(A))
    back = algebra_to_monoid(A)
    assert dist_eq(back.alpha, mon.alpha)


def test_random_monoids_agree_and_round_trip():
    X = cat2(catalog("lukasiewicz", 3), 0, 0, "L")
    rng = SplitMix64(5)
    law = law_Pd()
    for _ in range(8):
        alpha = random_monoid(rng, X)
        assert check_dist_monoid(alpha)[0]
        A = monoid_to_algebra(DistMonoid(X, alpha), law)
        assert passes(check_lax_algebra(A))
        assert dist_eq(algebra_to_monoid(A).alpha, alpha)
        assert structure_identity_Pd(A)
        assert structure_map_is_right_adjoint(A)


def test_non_reflexive_monoid_rejected_matching_witness():
    X = D2()
    rng = SplitMix64(13)
    bad = mutate_monoid_break_reflexivity(rng, X)
    assert bad is not None
    ok, wit = check_dist_monoid(bad)
    assert not ok and "reflexive-at" in wit
    A = monoid_to_algebra(DistMonoid(X, bad), law_Pd())
    recs = check_lax_algebra(A)
    unit_fails = [r for r in recs
                  if r["axiom"] == "lax-unit" and r["verdict"] == "fail"]
    assert unit_fails and unit_fails[0]["witness"]["x"] == wit["reflexive-at"]


# --- double presheaf law: interior structures -------------------------------

def test_point_has_exactly_two_interior_structures():
    pt = singleton(B2)
    PdX = Pd(pt)
    law = law_PPd()
    accepted = []
    for table in ([0, 1], [1, 1], [0, 0], [1, 0]):
        try:
            c = QFunctor(PdX, PdX, table, "cand")
        except Exception:
            continue
        from quantcat.qcat import check_functor
        if not check_functor(c)[0]:
            continue
        good_c = check_closure_operation(c)[0]
        A = interior_to_algebra(InteriorSpace(pt, c), law)
        good_a = passes(check_lax_algebra(A))
        assert good_c == good_a
        if good_c:
            accepted.append(tuple(table))
    assert len(accepted) == 2


def test_interior_round_trip_and_identities():
    X = cat2(B2, 1, 0, "C2")
    rng = SplitMix64(31)
    law = law_PPd()
    for _ in range(6):
        c = random_closure_operation(rng, X, "Pd")
        assert check_closure_operation(c)[0]
        A = interior_to_algebra(InteriorSpace(X, c), law)
        assert passes(check_lax_algebra(A))
        assert structure_identity_PPd(A)
        assert structure_map_is_right_adjoint(A)
        back = algebra_to_interior(A)
        assert back.c.equals(c)


def test_non_idempotent_interior_rejected_both_sides():
    X = cat2(B2, 0, 0, "D2")
    rng = SplitMix64(99)
    h = mutate_closure_break_idempotence(rng, X, "Pd")
    assert h is not None
    assert not check_closure_operation(h)[0]
    A = interior_to_algebra(InteriorSpace(X, h), law_PPd())
    recs = check_lax_algebra(A)
    assert any(r["verdict"] == "fail" for r in recs)


# --- double copresheaf law: closure spaces again ----------------------------

def test_PdP_closure_round_trip():
    X = D2()
    law = law_PdP()
    for c in (identity_functor(P(X)), downset_closure(X)):
        assert check_closure_operation(c)[0]
        A = closureP_to_PdP_algebra(ClosureSpace(X, c), law)
        assert passes(check_lax_algebra(A))
        assert PdP_algebra_to_closureP(A).c.equals(c)
        assert structure_identity_PdP(A)
        assert structure_map_is_right_adjoint(A)


def test_PdP_mutation_rejected():
    X = D2()
    rng = SplitMix64(123)
    h = mutate_closure_break_idempotence(rng, X, "P")
    assert h is not None
    A = closureP_to_PdP_algebra(ClosureSpace(X, h), law_PdP())
    assert any(r["verdict"] == "fail" for r in check_lax_algebra(A))


def test_both_closure_routes_agree():
    # the two algebra encodings of one closure space accept together
    # (over boolean2 both towers stay well under the cap: no skips)
    X = cat2(B2, 1, 0, "C2")
    rng = SplitMix64(7)
    for _ in range(5):
        c = random_closure_operation(rng, X, "P")
        r1 = check_lax_algebra(closure_to_algebra(
            ClosureSpace(X, c), law_P()))
        r2 = check_lax_algebra(closureP_to_PdP_algebra(
            ClosureSpace(X, c), law_PdP()))
        assert all(r["verdict"] == "pass" for r in r1 + r2), (r1, r2)


# --- distributor form -------------------------------------------------------

def test_TQ_category_yoneda_graph_passes():
    X = singleton(B2)
    ext = extension_from_law(law_P())
    C = TQCategory(X, graph(yoneda(X)), ext)
    assert passes(check_TQ_category(C))
    A = algebra_from_TQ(C, law_P())
    assert A.p.equals(identity_functor(P(X)))  # transpose of the Yoneda graph
    assert passes(check_lax_algebra(A))


def test_TQ_bottom_fails_lax_unit():
    X = cat2(B2, 1, 0, "C2")
    ext = extension_from_law(law_P())
    C = TQCategory(X, bottom_dist(X, P(X)), ext)
    recs = check_TQ_category(C)
    assert any(r["axiom"] == "lax-unit" and r["verdict"] == "fail"
               for r in recs)


def test_identity_monad_TQ_is_monoid():
    X = D2()
    ext = extension_from_law(law_Id())
    C = TQCategory(X, identity_dist(X), ext)
    assert passes(check_TQ_category(C))
    A = algebra_from_TQ(C, law_Id())
    assert A.p.equals(yoneda(X))  # transpose of the identity distributor


def test_TQ_round_trip_and_verdict_agreement():
    X = D2()
    law = law_P()
    ext = extension_from_law(law)
    rng = SplitMix64(17)
    from quantcat.rand import random_distributor
    for _ in range(6):
        alpha = random_distributor(rng, X, P(X))
        C = TQCategory(X, alpha, ext)
        A = algebra_from_TQ(C, law)
        assert dist_eq(TQ_from_algebra(A, ext).alpha, alpha)
        v1 = [r["verdict"] for r in check_TQ_category(C)]
        v2 = [r["verdict"] for r in check_lax_algebra(A)]
        assert v1 == v2


def test_lax_hom_matches_TQ_functor_and_continuity():
    X = D2()
    law = law_P()
    ext = extension_from_law(law)
    c = downset_closure(X)
    d = identity_functor(P(X))
    A = closure_to_algebra(ClosureSpace(X, c), law)
    B = closure_to_algebra(ClosureSpace(X, d), law)
    for f in enumerate_functors(X, X, limit=4):
        hom_ok, _ = check_lax_hom(f, A, B)
        tq_ok, _ = check_TQ_functor(f, TQ_from_algebra(A, ext),
                                    TQ_from_algebra(B, ext))
        # continuity of f between the closure spaces
        from quantcat.presheaf import f_lower
        cont = c.then(f_lower(f))
        dont = f_lower(f).then(d)
        from quantcat.qcat import functor_leq
        assert hom_ok == tq_ok == functor_leq(cont, dont)


# --- initial structures ------------------------------------------------------

def test_initial_structure_singleton_family():
    X = D2()
    law = law_P()
    q = downset_closure(X)
    A, recs = initial_structure(monad_P(), law,
                                [(identity_functor(X), q)])
    assert A.p.equals(q)
    assert passes(recs)
    # doubled family: meet is idempotent
    A2, _ = initial_structure(monad_P(), law,
                              [(identity_functor(X), q),
                               (identity_functor(X), q)])
    assert A2.p.equals(q)


def test_initial_structure_empty_family_is_top():
    from quantcat.errors import EmptyFamily
    X = D2()
    with pytest.raises(EmptyFamily):
        initial_structure(monad_P(), law_P(), [])
    A, recs = initial_structure(monad_P(), law_P(), [], X=X)
    PX = P(X)
    full = PX.index_of(0, np.ones(X.n, dtype=np.int32))
    assert all(A.p(i) == full for i in range(PX.n))


def test_initial_structure_meet_of_two_pullbacks():
    X = D2()
    pt = singleton(B2)
    law = law_P()
    q_pt = identity_functor(P(pt))
    fs = enumerate_functors(X, pt)
    fam = [(fs[0], q_pt), (fs[0], q_pt)]
    A, recs = initial_structure(monad_P(), law, fam)
    # brute-force the meet independently
    from quantcat.presheaf import f_lower, f_upper
    g = monad_P().fmap(fs[0]).then(q_pt).then(f_upper(fs[0]))
    assert A.p.equals(g)
    assert passes(recs)
