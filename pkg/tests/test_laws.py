"""Distributive laws, the generic flat law, and the extension bijection."""

import numpy as np
import pytest

from quantcat import TypedSet, catalog, check_category
from quantcat.laws import (
    BUILTIN_LAWS,
    check_extension_axioms,
    check_law_axioms,
    closed_form_extension,
    collage_extension,
    extension_from_law,
    generic_flat_law,
    graph_pair_extension,
    law_Id,
    law_P,
    law_Pd,
    law_PPd,
    law_PdP,
    law_from_extension,
)
from quantcat.monads import BUILTIN_MONADS
from quantcat.presheaf import P, Pd
from quantcat.qcat import QFunctor, enumerate_functors, identity_functor, singleton
from quantcat.qdist import QDistributor, dist_eq, identity_dist
from quantcat.rand import SplitMix64, random_distributor

B2 = catalog("boolean2")
L3 = catalog("lukasiewicz", 3)


def cat2(Q, u, v, name="X"):
    top = int(Q.top[0, 0])
    return check_category(Q, TypedSet(["x", "y"], [0, 0]),
                          [[top, u], [v, top]], name)


def small_instances():
    return [singleton(B2), cat2(B2, 0, 0, "D2"), cat2(B2, 1, 0, "C2")]


def fails(recs):
    return [r for r in recs if r["verdict"] == "fail"]


def verdicts(recs, axiom):
    return {r["verdict"] for r in recs if r["axiom"] == axiom}


def test_law_P_on_point_frozen_table():
    pt = singleton(B2)
    lam = law_P().at(pt)
    PX, PPX = P(pt), lam.source
    empty = PX.index_of(0, np.array([0], dtype=np.int32))
    full = PX.index_of(0, np.array([1], dtype=np.int32))
    down_empty = np.zeros(PX.n, dtype=np.int32)
    down_empty[empty] = 1
    down_full = np.ones(PX.n, dtype=np.int32)
    e_id = PPX.index_of(0, down_empty)     # principal downset of the empty one
    f_id = PPX.index_of(0, down_full)
    bottom = PPX.index_of(0, np.zeros(PX.n, dtype=np.int32))
    assert lam(bottom) == e_id
    assert lam(e_id) == e_id
    assert lam(f_id) == f_id


def test_identity_law_is_identity():
    X = cat2(B2, 1, 0, "C2")
    assert law_Id().at(X).equals(identity_functor(P(X)))
    gen = generic_flat_law(BUILTIN_MONADS["Id"]())
    assert gen.at(X).equals(identity_functor(P(X)))


@pytest.mark.parametrize("name", ["Id", "P", "Pd", "PPd", "PdP"])
def test_closed_forms_equal_generic_flat_law(name):
    T = BUILTIN_MONADS[name]()
    gen = generic_flat_law(T)
    law = BUILTIN_LAWS[name]()
    for X in small_instances():
        assert gen.at(X).equals(law.at(X))


def test_generic_flat_law_axioms_bc_strict():
    insts = small_instances()
    fs = [identity_functor(insts[2])] + enumerate_functors(insts[1], insts[2],
                                                           limit=4)
    for name in ("Id", "P", "Pd"):
        law = BUILTIN_LAWS[name]()
        recs = check_law_axioms(law, insts, fs)
        assert not fails(recs), (name, fails(recs)[0])
        assert verdicts(recs, "b") == {"strict"}
        assert verdicts(recs, "c") <= {"strict", "skip"}
        assert "strict" in verdicts(recs, "c")


def test_double_monad_law_axioms_on_point():
    pt = singleton(B2)
    for name in ("PPd", "PdP"):
        recs = check_law_axioms(BUILTIN_LAWS[name](), [pt],
                                [identity_functor(pt)])
        assert not fails(recs), (name, fails(recs))
        assert verdicts(recs, "b") == {"strict"}
        assert "strict" in verdicts(recs, "c")


def test_law_Pd_all_five_strict():
    insts = small_instances()
    fs = [identity_functor(insts[2])] + enumerate_functors(insts[1], insts[2],
                                                           limit=4)
    recs = check_law_axioms(law_Pd(), insts, fs)
    assert not fails(recs)
    for ax in "abcde":
        assert verdicts(recs, ax) <= {"strict", "skip"}, ax
        assert "strict" in verdicts(recs, ax)


def test_extension_of_identity_distributor_is_flat():
    X = cat2(B2, 0, 0, "D2")
    ext = extension_from_law(law_P())
    assert dist_eq(ext.at(identity_dist(X)), identity_dist(P(X)))
    ext_id = extension_from_law(law_Id())
    phi = random_distributor(SplitMix64(3), X, X)
    assert dist_eq(ext_id.at(phi), phi)


def test_law_Pd_extension_matches_closed_form_on_luk3():
    pt = singleton(L3)
    ext = extension_from_law(law_Pd())
    for v in range(3):
        phi = QDistributor(pt, pt, [[v]], validated=True, name=f"c{v}")
        assert dist_eq(ext.at(phi), closed_form_extension("Pd", phi))


@pytest.mark.parametrize("name", ["P", "Pd", "PPd", "PdP"])
def test_closed_form_extension_equals_law_extension(name):
    X = cat2(B2, 0, 0, "D2")
    Y = cat2(B2, 1, 0, "C2")
    ext = extension_from_law(BUILTIN_LAWS[name]())
    rng = SplitMix64(41)
    dists = [identity_dist(X), random_distributor(rng, X, Y),
             random_distributor(rng, Y, X)]
    for phi in dists:
        assert dist_eq(ext.at(phi), closed_form_extension(name, phi))


def test_extension_law_round_trips():
    insts = small_instances()
    lam = law_P()
    back = law_from_extension(extension_from_law(lam))
    for X in insts:
        assert back.at(X).equals(lam.at(X))
    # other direction, on sampled distributors
    ext = extension_from_law(law_Pd())
    again = extension_from_law(law_from_extension(ext))
    rng = SplitMix64(7)
    for _ in range(4):
        phi = random_distributor(rng, insts[1], insts[2])
        assert dist_eq(again.at(phi), ext.at(phi))


def test_graph_pair_and_collage_extension():
    T = BUILTIN_MONADS["P"]()
    X = cat2(B2, 1, 0, "C2")
    u = identity_functor(X)
    assert dist_eq(graph_pair_extension(T, u, u),
                   identity_dist(P(X)))
    rng = SplitMix64(11)
    for name in ("P", "Pd"):
        Tn = BUILTIN_MONADS[name]()
        for _ in range(3):
            phi = random_distributor(rng, X, X)
            assert dist_eq(collage_extension(Tn, phi),
                           closed_form_extension(name, phi))


def test_extension_axioms_P_flat_and_Pd_strict():
    X, Y = cat2(B2, 0, 0, "D2"), cat2(B2, 1, 0, "C2")
    rng = SplitMix64(17)
    dists = [identity_dist(X), random_distributor(rng, X, Y),
             random_distributor(rng, Y, Y)]
    fs = enumerate_functors(X, Y, limit=3) + [identity_functor(X)]
    ext = extension_from_law(law_P())
    recs = check_extension_axioms(ext, [X, Y], dists, fs)
    assert not fails(recs), fails(recs)[0]
    assert verdicts(recs, "flat") == {"strict"}
    assert verdicts(recs, "graph-conditions-agree") == {"pass"}
    # the copresheaf law is a strict law, so its extension is strict
    ext_d = extension_from_law(law_Pd())
    recs = check_extension_axioms(ext_d, [X, Y], dists, fs)
    assert not fails(recs)
    for ax in ("compose", "unit-law", "mult-law"):
        assert verdicts(recs, ax) <= {"strict", "skip"}, ax


def test_hypothesis_failure_reported():
    # a monad whose functor part destroys full fidelity: constant collapse
    from quantcat.errors import HypothesisFailed
    from quantcat.monads import Monad2

    def obj(X, cap=None):
        return X

    def fmap(f, cap=None):
        # collapse everything onto the first value: not fully faithful
        return QFunctor(f.source, f.target,
                        np.full(f.source.n, f.table[0], dtype=np.int64))

    def unit(X, cap=None):
        return identity_functor(X)

    crush = Monad2("crush", obj, fmap, unit, unit)
    law = generic_flat_law(crush)
    with pytest.raises(HypothesisFailed):
        law.at(cat2(B2, 0, 0, "D2"))
