"""Monad structure of the five built-ins, and table-file monads."""

import numpy as np
import pytest

from quantcat import FingerprintMismatch, TypedSet, catalog, check_category
from quantcat.monads import (
    check_monad_laws,
    monad_Id,
    monad_P,
    monad_Pd,
    monad_PPd,
    monad_PdP,
    monad_from_tables,
    monad_to_tables,
)
from quantcat.presheaf import P, Pd, clear_cache
from quantcat.qcat import QFunctor, identity_functor, singleton

B2 = catalog("boolean2")


def cat2(Q, u, v, name="X"):
    top = int(Q.top[0, 0])
    return check_category(Q, TypedSet(["x", "y"], [0, 0]),
                          [[top, u], [v, top]], name)


def fails(report):
    return [r for r in report if r["verdict"] == "fail"]


def test_identity_monad_laws():
    X = cat2(B2, 1, 0, "C2")
    report = check_monad_laws(monad_Id(), [X])
    assert report and not fails(report)


def test_presheaf_monad_laws_boolean2():
    instances = [singleton(B2), cat2(B2, 0, 0, "D2"), cat2(B2, 1, 0, "C2")]
    report = check_monad_laws(monad_P(), instances)
    assert not fails(report)
    report = check_monad_laws(monad_Pd(), instances)
    assert not fails(report)


def test_double_monad_laws_on_point():
    pt = singleton(B2)
    for T in (monad_PPd(), monad_PdP()):
        report = check_monad_laws(T, [pt])
        assert report and not fails(report)


def test_double_monads_luk3_small():
    L3 = catalog("lukasiewicz", 3)
    X = cat2(L3, 1, 0, "L")
    for T in (monad_PPd(), monad_PdP()):
        report = check_monad_laws(T, [X], check_triples=False)
        assert not fails(report)


def test_ppd_carrier_is_p_of_pd():
    X = cat2(B2, 1, 0, "C2")
    assert monad_PPd().obj(X).fingerprint == P(Pd(X)).fingerprint
    # over the point the double presheaf carrier is the 3-chain
    assert monad_PPd().obj(singleton(B2)).n == 3


def test_ppd_unit_forms_agree():
    # the two composites defining the unit coincide: y . yd = (yd)_! . y
    from quantcat.presheaf import co_yoneda, f_lower, yoneda
    for X in (singleton(B2), cat2(B2, 1, 0, "C2")):
        lhs = co_yoneda(X).then(yoneda(Pd(X)))
        rhs = yoneda(X).then(f_lower(co_yoneda(X)))
        assert lhs.equals(rhs)


def test_corrupted_mult_detected_via_tables():
    pt = singleton(B2)
    T = monad_P()
    from quantcat.presheaf import yoneda
    doc = monad_to_tables(T, [pt, T.obj(pt)], functors=[yoneda(pt)])
    # swap two outputs of the multiplication table
    tbl = doc["mult"][pt.fingerprint]
    tbl[0], tbl[-1] = tbl[-1], tbl[0]
    bad = monad_from_tables(B2, doc)
    report = check_monad_laws(
        bad, [pt], functor_pairs=[],
        laws={"unit-triangle-left", "unit-triangle-right"})
    bad_laws = {r["law"] for r in fails(report)}
    assert bad_laws & {"unit-triangle-left", "unit-triangle-right"}
    for r in fails(report):
        assert r["witness"]


def test_fingerprint_mismatch_rejected():
    pt = singleton(B2)
    doc = monad_to_tables(monad_P(), [pt])
    other = cat2(B2, 0, 0, "D2")
    T = monad_from_tables(B2, doc)
    with pytest.raises(FingerprintMismatch):
        T.obj(other)


def test_round_trip_through_tables():
    pt = singleton(B2)
    T = monad_P()
    doc = monad_to_tables(T, [pt])
    T2 = monad_from_tables(B2, doc)
    assert T2.obj(pt).n == T.obj(pt).n
    assert list(T2.unit(pt).table) == list(T.unit(pt).table)
    assert list(T2.mult(pt).table) == list(T.mult(pt).table)
