"""Quantaloid core: validation witnesses, residual oracles, catalog."""

from fractions import Fraction

import numpy as np
import pytest

from quantcat import (
    NotALattice,
    NotAssociative,
    NotSupPreserving,
    NotUnital,
    TypeMismatch,
    UnknownCatalogEntry,
    catalog,
    validate_quantaloid,
)
from quantcat.quantaloid import residual_left, residual_right


def two_chain_spec(times, unit):
    return {
        "objects": ["*"],
        "homs": {"*->*": {"elements": ["0", "1"], "leq": [["0", "1"]]}},
        "compose": {"*->*->*": [[v, u, times(v, u)] for v in "01" for u in "01"]},
        "units": {"*": unit},
    }


def test_boolean2_valid():
    Q = catalog("boolean2")
    assert Q.objects == ("*",)
    assert Q.elem_local == ("0", "1")
    assert Q.unit[0] == Q.top[0, 0]


def test_lukasiewicz3_associativity_against_fraction_oracle():
    Q = catalog("lukasiewicz", 3)
    vals = [Fraction(0), Fraction(1, 2), Fraction(1)]

    def times(a, b):
        return max(Fraction(0), a + b - 1)

    # all 27 triples, computed independently of the package tables
    for a in range(3):
        for b in range(3):
            assert str(times(vals[a], vals[b])) == Q.elem_local[Q.comp[a, b]]
            for c in range(3):
                lhs = times(times(vals[a], vals[b]), vals[c])
                rhs = times(vals[a], times(vals[b], vals[c]))
                assert lhs == rhs


def test_declared_unit_rejected_with_witness():
    # join as composition has unit 0; declaring 1 must fail
    spec = two_chain_spec(lambda v, u: str(max(int(v), int(u))), "1")
    with pytest.raises(NotUnital) as e:
        validate_quantaloid(spec)
    assert e.value.witness  # carries the offending element


def test_non_associative_rejected():
    # "composition" v.u = v except 1.1 = 0 breaks (1.1).1 vs 1.(1.1)
    def times(v, u):
        if v == "1" and u == "1":
            return "0"
        return v
    spec = two_chain_spec(times, "0")
    with pytest.raises((NotAssociative, NotUnital, NotSupPreserving)):
        validate_quantaloid(spec)


def test_not_sup_preserving_rejected():
    # v.u = meet except bottom absorbs wrongly: constant-1 composition
    spec = two_chain_spec(lambda v, u: "1", "1")
    with pytest.raises((NotSupPreserving, NotUnital)):
        validate_quantaloid(spec)


def test_bad_lattice_rejected():
    spec = {
        "objects": ["*"],
        "homs": {"*->*": {"elements": ["a", "b"], "leq": []}},  # antichain: no lub
        "compose": {"*->*->*": [["a", "a", "a"]]},
        "units": {"*": "a"},
    }
    with pytest.raises(NotALattice):
        validate_quantaloid(spec)


def test_residuals_boolean2():
    Q = catalog("boolean2")
    z, o = 0, 1
    assert residual_left(Q, z, o) == z   # 0/1 = 0
    assert residual_left(Q, o, z) == o   # 1/0 = 1
    assert residual_right(Q, z, z) == o
    # (1_s)/(1_s) >= 1_s
    u = int(Q.unit[0])
    assert Q.leq[u, residual_left(Q, u, u)]


def test_residual_luk3_enumeration_oracle():
    Q = catalog("lukasiewicz", 3)
    vals = [Fraction(0), Fraction(1, 2), Fraction(1)]

    def times(a, b):
        return max(Fraction(0), a + b - 1)

    def lda_oracle(w, u):
        return max(v for v in range(3) if times(vals[v], vals[u]) <= vals[w])

    for w in range(3):
        for u in range(3):
            assert residual_left(Q, w, u) == lda_oracle(w, u)
    # the spec-level instance: 0 / (1/2) = 1/2
    assert Q.elem_local[residual_left(Q, 0, 1)] == "1/2"


def test_chain_min3_right_residual():
    Q = catalog("chain_min", 3)
    # largest u with min(0, u) <= 1/2 is 1
    assert Q.elem_local[residual_right(Q, 0, 1)] == "1"


def test_product22_diamond():
    Q = catalog("product", "boolean2", "boolean2")
    assert Q.n_elements == 4
    lat = Q.homs[(0, 0)]
    # two incomparable middle elements
    a = lat.index("(0,1)")
    b = lat.index("(1,0)")
    assert not lat.leq[a, b] and not lat.leq[b, a]
    assert lat.elements[lat.join[a, b]] == "(1,1)"
    assert lat.elements[lat.meet[a, b]] == "(0,0)"


def test_unknown_catalog_entry():
    with pytest.raises(UnknownCatalogEntry):
        catalog("nope")


@pytest.mark.parametrize("name,args", [
    ("boolean2", ()),
    ("chain_min", (3,)),
    ("lukasiewicz", (3,)),
    ("product", ("boolean2", "boolean2")),
])
def test_residual_adjunction_exhaustive(name, args):
    # v.u <= w  <=>  u <= v\\w  <=>  v <= w/u  on every hom triple
    Q = catalog(name, *args)
    ids = Q.hom_ids[(0, 0)]
    for v in ids:
        for u in ids:
            for w in ids:
                lhs = bool(Q.leq[Q.comp[v, u], w])
                mid = bool(Q.leq[u, Q.rda[v, w]])
                rhs = bool(Q.leq[v, Q.lda[w, u]])
                assert lhs == mid == rhs


def test_residual_outputs_are_maxima():
    for name, args in [("boolean2", ()), ("lukasiewicz", (3,))]:
        Q = catalog(name, *args)
        ids = Q.hom_ids[(0, 0)]
        for u in ids:
            for w in ids:
                g = Q.lda[w, u]
                assert Q.leq[Q.comp[g, u], w]
                for v in ids:
                    if Q.leq[Q.comp[v, u], w]:
                        assert Q.leq[v, g]


def test_composition_preserves_joins_tablewise():
    Q = catalog("product", "boolean2", "boolean2")
    ids = Q.hom_ids[(0, 0)]
    for v in ids:
        assert Q.comp[v, Q.bot[0, 0]] == Q.bot[0, 0]
        for u1 in ids:
            for u2 in ids:
                assert Q.comp[v, Q.join[u1, u2]] == \
                    Q.join[Q.comp[v, u1], Q.comp[v, u2]]


def test_type_mismatch_on_residual():
    # two-object free quantaloid with singleton homs
    spec = {
        "objects": ["r", "s"],
        "homs": {
            "r->r": {"elements": ["i"], "leq": []},
            "r->s": {"elements": ["f"], "leq": []},
            "s->r": {"elements": ["g"], "leq": []},
            "s->s": {"elements": ["j"], "leq": []},
        },
        "compose": {
            "r->r->r": [["i", "i", "i"]],
            "r->r->s": [["f", "i", "f"]],
            "r->s->r": [["g", "f", "i"]],
            "r->s->s": [["j", "f", "f"]],
            "s->r->r": [["i", "g", "g"]],
            "s->r->s": [["f", "g", "j"]],
            "s->s->r": [["g", "j", "g"]],
            "s->s->s": [["j", "j", "j"]],
        },
        "units": {"r": "i", "s": "j"},
    }
    Q = validate_quantaloid(spec, "pair")
    i = Q.elem_id(0, 0, "i")
    f = Q.elem_id(0, 1, "f")
    assert residual_left(Q, f, i) == f
    with pytest.raises(TypeMismatch):
        residual_left(Q, Q.elem_id(1, 1, "j"), f)  # sources differ: s vs r


def test_fingerprint_deterministic():
    assert catalog("boolean2").fingerprint == catalog("boolean2").fingerprint
    assert catalog("boolean2").fingerprint != catalog("chain_min", 3).fingerprint
