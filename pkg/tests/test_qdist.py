"""Distributor algebra: composition, residuals, order, meets and joins."""

import numpy as np
import pytest

from quantcat import (
    EmptyFamily,
    SignatureMismatch,
    TypedSet,
    catalog,
    check_category,
    check_distributor,
    compose,
    dist_join,
    dist_leq,
    dist_meet,
    dist_residual_left,
    dist_residual_right,
    graph,
    cograph,
    identity_dist,
)
from quantcat.qcat import QFunctor, singleton
from quantcat.qdist import QDistributor, bottom_dist, dist_eq, top_dist
from quantcat.rand import SplitMix64, random_distributor

B2 = catalog("boolean2")
L3 = catalog("lukasiewicz", 3)


def cat2(Q, u, v, name="X"):
    top = int(Q.top[0, 0])
    return check_category(Q, TypedSet(["x", "y"], [0, 0]),
                          [[top, u], [v, top]], name)


def test_identity_law():
    X = cat2(B2, 1, 0)
    rng = SplitMix64(7)
    for _ in range(5):
        phi = random_distributor(rng, X, X)
        assert dist_eq(compose(identity_dist(X), phi), phi)
        assert dist_eq(compose(phi, identity_dist(X)), phi)


def test_boolean_matrix_product():
    X = cat2(B2, 0, 0, "D2")
    phi = QDistributor(X, X, [[1, 0], [0, 0]])
    psi = QDistributor(X, X, [[0, 1], [0, 0]])
    assert np.array_equal(compose(phi, psi).mat, [[0, 1], [0, 0]])


def test_luk3_composition_truncates():
    pt = singleton(L3)
    half = QDistributor(pt, pt, [[1]])
    assert compose(half, half).mat[0, 0] == 0  # 1/2 (x) 1/2 = 0


def test_residual_of_identity_is_identity():
    X = cat2(B2, 1, 0)
    rng = SplitMix64(11)
    for _ in range(5):
        theta = random_distributor(rng, X, X)
        assert dist_eq(dist_residual_left(theta, identity_dist(X)), theta)


def test_residual_singleton_values():
    pt = singleton(B2)
    theta = QDistributor(pt, pt, [[1]])
    phi = QDistributor(pt, pt, [[0]])
    assert dist_residual_left(theta, phi).mat[0, 0] == 1


def test_residual_unit_law():
    X = cat2(B2, 0, 1)
    rng = SplitMix64(3)
    for _ in range(5):
        phi = random_distributor(rng, X, X)
        psi = random_distributor(rng, X, X)
        assert dist_leq(phi, dist_residual_right(psi, compose(phi, psi)))


def test_residual_adjunction_exhaustive_small():
    # psi.phi <= theta  <=>  phi <= psi\theta  <=>  psi <= theta/phi
    pt = singleton(L3)
    dists = [QDistributor(pt, pt, [[v]]) for v in range(3)]
    for phi in dists:
        for psi in dists:
            for theta in dists:
                lhs = dist_leq(compose(phi, psi), theta)
                mid = dist_leq(phi, dist_residual_right(psi, theta))
                rhs = dist_leq(psi, dist_residual_left(theta, phi))
                assert lhs == mid == rhs


def test_check_distributor():
    X = cat2(B2, 1, 0, "C2")  # x <= y
    ok, _ = check_distributor(identity_dist(X))
    assert ok
    # phi(y)=1, phi(x)=0 into the point: fails the downset condition
    pt = singleton(B2)
    phi = QDistributor(X, pt, [[0], [1]])
    ok, wit = check_distributor(phi)
    assert not ok and wit["x"] == "x"
    # closing an arbitrary relation yields a distributor
    rng = SplitMix64(5)
    for _ in range(10):
        r = random_distributor(rng, X, X)
        assert check_distributor(r)[0]


def test_graph_cograph_adjoint():
    X = cat2(B2, 1, 0, "C2")
    pt = singleton(B2)
    i = QFunctor(pt, X, [0], "inc")
    gi, ci = graph(i), cograph(i)
    assert np.array_equal(gi.mat, X.hom[0:1, :])  # i_*(x, -) = hom(x, -)
    # unit and counit of f_* -| f^*
    unit = compose(gi, ci)
    assert dist_leq(identity_dist(pt), unit)
    counit = compose(ci, gi)
    assert dist_leq(counit, identity_dist(X))


def test_graph_of_identity_is_hom():
    X = cat2(B2, 1, 0)
    from quantcat.qcat import identity_functor
    assert dist_eq(graph(identity_functor(X)), identity_dist(X))
    assert dist_eq(cograph(identity_functor(X)), identity_dist(X))


def test_meet_join_lattice_ops():
    X = cat2(B2, 0, 0)
    rng = SplitMix64(13)
    phi = random_distributor(rng, X, X)
    psi = random_distributor(rng, X, X)
    assert dist_eq(dist_meet([phi, phi]), phi)
    assert dist_eq(dist_join([bottom_dist(X, X), phi]), phi)
    met = dist_meet([phi, psi])
    assert met.validated and check_distributor(met)[0]
    assert dist_leq(met, phi) and dist_leq(met, psi)
    assert dist_eq(dist_meet([], source=X, target=X), top_dist(X, X))
    with pytest.raises(EmptyFamily):
        dist_meet([])
    with pytest.raises(SignatureMismatch):
        dist_meet([phi, QDistributor(singleton(B2), X, [[0, 0]])])


def test_dist_quantaloid_laws_on_random_instances():
    # associativity and both unit laws, exact, over two quantales
    for Q in (B2, L3):
        X = cat2(Q, int(Q.top[0, 0]), 0)
        Y = singleton(Q)
        rng = SplitMix64(17)
        for _ in range(8):
            phi = random_distributor(rng, X, Y)
            psi = random_distributor(rng, Y, X)
            theta = random_distributor(rng, X, X)
            lhs = compose(compose(phi, psi), theta)
            rhs = compose(phi, compose(psi, theta))
            assert dist_eq(lhs, rhs)
