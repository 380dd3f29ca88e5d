"""Lax algebras for distributive laws, their distributor form, and the
structure dictionaries they encode.

The converters mirror four equivalences: self-distribution algebras are
closure operations on PX; copresheaf-law algebras are monoids in the
distributor quantaloid; double-presheaf-law algebras are closure
operations on PdX (interior structures); double-copresheaf-law algebras
are again closure operations on PX.  Each converter has an inverse, and
checker verdicts agree on both sides of every conversion.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import CapExceeded, EmptyFamily, QuantcatError
from .laws import DistLaw, LaxExtension, _cmp_functors, _rec
from .monads import Monad2
from .presheaf import (
    P,
    Pd,
    PresheafCategory,
    _functor_from_rows,
    co_yoneda,
    f_dag_lower,
    f_lower,
    f_upper,
    inf_P,
    isbell_down,
    kan_lower_star,
    sup_P,
    transpose_to_P,
    transpose_to_Pd,
    untranspose_P,
    untranspose_Pd,
    yoneda,
)
from .qcat import (
    QCategory,
    QFunctor,
    check_adjoint,
    functor_leq,
    functor_leq_witness,
    identity_functor,
    left_adjoint,
)
from .qdist import (
    QDistributor,
    cograph,
    compose,
    dist_eq,
    dist_leq,
    dist_leq_witness,
    graph,
    identity_dist,
)
from .rand import SplitMix64, random_distributor, random_monoid


@dataclass
class LaxAlgebra:
    X: QCategory
    p: QFunctor          # T(X) -> P(X)
    law: DistLaw


@dataclass
class TQCategory:
    X: QCategory
    alpha: QDistributor  # X -|-> T(X)
    extension: LaxExtension


@dataclass
class ClosureSpace:
    X: QCategory
    c: QFunctor          # closure operation on P(X)


@dataclass
class InteriorSpace:
    X: QCategory
    c: QFunctor          # closure operation on Pd(X)


@dataclass
class DistMonoid:
    X: QCategory
    alpha: QDistributor  # X -|-> X with 1* <= alpha, alpha.alpha <= alpha


# ---------------------------------------------------------------------------
# checkers
# ---------------------------------------------------------------------------

def check_lax_algebra(A: LaxAlgebra, cap=None) -> list[dict]:
    """Records for the lax unit law and the lax multiplication law."""
    T = A.law.monad
    X = A.X
    out = []

    def guarded(axiom, thunk):
        try:
            verdict, wit = thunk()
            out.append(_rec(A.law.name, X.name, axiom, verdict, wit))
        except CapExceeded as e:
            out.append(_rec(A.law.name, X.name, axiom, "skip", reason=str(e)))

    def lax_unit():
        v, wit = _cmp_functors(yoneda(X, cap), T.unit(X, cap).then(A.p))
        return ("pass" if v in ("strict", "lax") else "fail"), wit

    def lax_mult():
        lhs = T.fmap(A.p, cap).then(A.law.at(X, cap)) \
            .then(f_lower(A.p, cap)).then(sup_P(X, cap))
        rhs = T.mult(X, cap).then(A.p)
        v, wit = _cmp_functors(lhs, rhs)
        return ("pass" if v in ("strict", "lax") else "fail"), wit

    guarded("lax-unit", lax_unit)
    guarded("lax-mult", lax_mult)
    return out


def algebra_ok(A: LaxAlgebra, cap=None) -> bool:
    return all(r["verdict"] == "pass" for r in check_lax_algebra(A, cap))


def check_lax_hom(h: QFunctor, A: LaxAlgebra, B: LaxAlgebra, cap=None):
    """(holds, witness) for the lax homomorphism law of h: A -> B."""
    T = A.law.monad
    lhs = A.p.then(f_lower(h, cap))
    rhs = T.fmap(h, cap).then(B.p)
    ok, wit = functor_leq_witness(lhs, rhs)
    return ok, wit


def check_TQ_category(C: TQCategory, cap=None) -> list[dict]:
    T = C.extension.monad
    X = C.X
    out = []

    def guarded(axiom, thunk):
        try:
            verdict, wit = thunk()
            out.append(_rec(C.extension.name, X.name, axiom, verdict, wit))
        except CapExceeded as e:
            out.append(_rec(C.extension.name, X.name, axiom, "skip",
                            reason=str(e)))

    def lax_unit():
        lhs = identity_dist(X)
        rhs = compose(C.alpha, cograph(T.unit(X, cap)))
        ok, wit = dist_leq_witness(lhs, rhs)
        return ("pass" if ok else "fail"), wit

    def lax_mult():
        lhs = compose(C.alpha, C.extension.at(C.alpha, cap))
        rhs = compose(C.alpha, cograph(T.mult(X, cap)))
        ok, wit = dist_leq_witness(lhs, rhs)
        return ("pass" if ok else "fail"), wit

    guarded("lax-unit", lax_unit)
    guarded("lax-mult", lax_mult)
    return out


def check_TQ_functor(h: QFunctor, C: TQCategory, D: TQCategory, cap=None):
    T = C.extension.monad
    lhs = compose(cograph(h), C.alpha)
    rhs = compose(D.alpha, cograph(T.fmap(h, cap)))
    ok, wit = dist_leq_witness(lhs, rhs)
    return ok, wit


# ---------------------------------------------------------------------------
# algebra <-> distributor form
# ---------------------------------------------------------------------------

def algebra_from_TQ(C: TQCategory, law: DistLaw, cap=None) -> LaxAlgebra:
    return LaxAlgebra(C.X, transpose_to_P(C.alpha, cap), law)


def TQ_from_algebra(A: LaxAlgebra, ext: LaxExtension, cap=None) -> TQCategory:
    return TQCategory(A.X, untranspose_P(A.p), ext)


# ---------------------------------------------------------------------------
# structure checkers
# ---------------------------------------------------------------------------

def check_closure_operation(c: QFunctor):
    """(ok, witness) for: inflationary and idempotent endo on a carrier."""
    if not c.source.same_as(c.target):
        return False, {"reason": "not an endofunctor"}
    ok, wit = functor_leq_witness(identity_functor(c.source), c)
    if not ok:
        return False, {"inflationary-at": wit["x"]}
    cc = c.then(c)
    if not cc.equals(c):
        bad = int(np.argmin(cc.table == c.table))
        return False, {"idempotent-at": c.source.ids[bad],
                       "c": c.target.ids[c(bad)],
                       "cc": c.target.ids[cc(bad)]}
    return True, None


def check_dist_monoid(alpha: QDistributor):
    if not alpha.source.same_as(alpha.target):
        return False, {"reason": "endo-distributor required"}
    ok, wit = dist_leq_witness(identity_dist(alpha.source), alpha)
    if not ok:
        return False, {"reflexive-at": wit["x"]}
    ok, wit = dist_leq_witness(compose(alpha, alpha), alpha)
    if not ok:
        return False, {"transitive-at": (wit["x"], wit["y"])}
    return True, None


# ---------------------------------------------------------------------------
# the four converters
# ---------------------------------------------------------------------------

def closure_to_algebra(space: ClosureSpace, law_P: DistLaw,
                       cap=None) -> LaxAlgebra:
    """Self-distribution: the structure map is the closure operation."""
    return LaxAlgebra(space.X, space.c, law_P)


def algebra_to_closure(A: LaxAlgebra) -> ClosureSpace:
    return ClosureSpace(A.X, A.p)


def monoid_to_algebra(mon: DistMonoid, law_Pd: DistLaw,
                      cap=None) -> LaxAlgebra:
    """Copresheaf law: p sends tau to tau \\ alpha."""
    return LaxAlgebra(mon.X, isbell_down(mon.alpha, cap), law_Pd)


def algebra_to_monoid(A: LaxAlgebra, cap=None) -> DistMonoid:
    """alpha recovered from the transpose p . co-yoneda."""
    bar = co_yoneda(A.X, cap).then(A.p)
    return DistMonoid(A.X, untranspose_P(bar))


def interior_to_algebra(space: InteriorSpace, law_PPd: DistLaw,
                        cap=None) -> LaxAlgebra:
    """Double presheaf law: p is the right Kan functor of the distributor
    form of the interior operation."""
    phi = untranspose_Pd(space.c)          # Pd(X) -|-> X
    return LaxAlgebra(space.X, kan_lower_star(phi, cap), law_PPd)


def algebra_to_interior(A: LaxAlgebra, cap=None) -> InteriorSpace:
    """Inverse via the left adjoint of p (accepted structure maps are
    right adjoints)."""
    q = left_adjoint(A.p)
    if q is None:
        raise QuantcatError(
            "structure map has no left adjoint; not in the image of the "
            "interior correspondence")
    bar = yoneda(A.X, cap).then(q)         # X -> P(Pd(X))
    phi = untranspose_P(bar)               # Pd(X) -|-> X
    return InteriorSpace(A.X, transpose_to_Pd(phi, cap))


def closureP_to_PdP_algebra(space: ClosureSpace, law_PdP: DistLaw,
                            cap=None) -> LaxAlgebra:
    """Double copresheaf law: p sends tau to tau \\ (distributor form of
    the closure operation)."""
    phi = untranspose_P(space.c)           # X -|-> P(X)
    return LaxAlgebra(space.X, isbell_down(phi, cap), law_PdP)


def PdP_algebra_to_closureP(A: LaxAlgebra, cap=None) -> ClosureSpace:
    c = co_yoneda(P(A.X, cap), cap).then(A.p)
    return ClosureSpace(A.X, c)


# ---------------------------------------------------------------------------
# structure-map identities satisfied by accepted algebras
# ---------------------------------------------------------------------------

def structure_identity_Pd(A: LaxAlgebra, cap=None) -> bool:
    """p = inf . p+ . (co-yoneda)+ for accepted copresheaf-law algebras."""
    rhs = f_dag_lower(co_yoneda(A.X, cap), cap) \
        .then(f_dag_lower(A.p, cap)).then(inf_P(A.X, cap))
    return A.p.equals(rhs)


def structure_identity_PPd(A: LaxAlgebra, cap=None) -> bool:
    """p = y^! . (yd)^! . (p+)! . inf^! . y for the double presheaf law."""
    X = A.X
    PdX = Pd(X, cap)
    PPdX = P(PdX, cap)
    rhs = yoneda(PPdX, cap) \
        .then(f_upper(inf_P(PdX, cap), cap)) \
        .then(f_lower(f_dag_lower(A.p, cap), cap)) \
        .then(f_upper(co_yoneda(P(X, cap), cap), cap)) \
        .then(f_upper(yoneda(X, cap), cap))
    return A.p.equals(rhs)


def structure_identity_PdP(A: LaxAlgebra, cap=None) -> bool:
    """p = inf . p+ . (co-yoneda of PX)+ for the double copresheaf law."""
    rhs = f_dag_lower(co_yoneda(P(A.X, cap), cap), cap) \
        .then(f_dag_lower(A.p, cap)).then(inf_P(A.X, cap))
    return A.p.equals(rhs)


def structure_map_is_right_adjoint(A: LaxAlgebra) -> bool:
    q = left_adjoint(A.p)
    return q is not None and check_adjoint(q, A.p)


# ---------------------------------------------------------------------------
# initial structures
# ---------------------------------------------------------------------------

def initial_structure(T: Monad2, law: DistLaw, family,
                      X: QCategory | None = None, cap=None):
    """Pointwise meet of the structures pulled back along a family
    (f_j: X -> Y_j, q_j: T(Y_j) -> P(Y_j)).

    Returns (LaxAlgebra, records); the lax-algebra laws of the meet are
    checked and reported rather than assumed.
    """
    family = list(family)
    if not family and X is None:
        raise EmptyFamily("an empty family needs a declared source")
    if family:
        X = family[0][0].source
        for f, _ in family:
            if not f.source.same_as(X):
                raise EmptyFamily("family members must share their source")
    TX = T.obj(X, cap)
    PX = P(X, cap)
    # top structure: every value is the top presheaf of the right type
    Q = X.Q
    rows = Q.top[X.types[None, :], TX.types[:, None]]
    for f, q in family:
        g = T.fmap(f, cap).then(q).then(f_upper(f, cap))
        rows = Q.meet[rows, PX.vectors[g.table]]
    p = _functor_from_rows(TX, PX, np.ascontiguousarray(rows),
                           TX.types, "initial")
    A = LaxAlgebra(X, p, law)
    return A, check_lax_algebra(A, cap)


# ---------------------------------------------------------------------------
# seeded structure generators and mutations
# ---------------------------------------------------------------------------

def _pointwise_join(carrier: PresheafCategory, g: QFunctor,
                    h: QFunctor) -> QFunctor:
    """Join of two endomaps in the carrier's underlying order."""
    Q = carrier.Q
    table = Q.join if carrier.kind == "P" else Q.meet
    rows = table[carrier.vectors[g.table], carrier.vectors[h.table]]
    return _functor_from_rows(carrier, carrier, rows, carrier.types, "join")


def _iterate_to_closure(carrier: PresheafCategory, g: QFunctor) -> QFunctor:
    """Inflate by the identity and iterate to the finite fixpoint; the
    result is inflationary, monotone and idempotent."""
    h = _pointwise_join(carrier, g, identity_functor(carrier))
    c = h
    while True:
        step = c.then(h)
        if step.equals(c):
            return c
        c = step


def random_closure_operation(rng: SplitMix64, X: QCategory,
                             kind: str = "P", cap=None) -> QFunctor:
    """Random enriched closure operation on P(X) (kind 'P') or Pd(X).

    The seed functor is the transpose of a random distributor, which is
    enriched by construction; joining with the identity and iterating
    yields a closure operation covering a broad range of structures.
    """
    if kind == "P":
        carrier = P(X, cap)
        phi = random_distributor(rng, X, carrier)
        g = transpose_to_P(phi, cap)
    else:
        carrier = Pd(X, cap)
        phi = random_distributor(rng, carrier, X)
        g = transpose_to_Pd(phi, cap)
    return _iterate_to_closure(carrier, g)


def mutate_closure_break_idempotence(rng: SplitMix64, X: QCategory,
                                     kind: str = "P", cap=None):
    """An inflationary enriched endomap that is not idempotent.

    Single inflation steps and their two-sided composites are tried until
    one fails idempotence (deterministically in the seed); None when the
    carrier admits none within the attempt budget."""
    carrier = P(X, cap) if kind == "P" else Pd(X, cap)

    def step():
        if kind == "P":
            g = transpose_to_P(random_distributor(rng, X, carrier), cap)
        else:
            g = transpose_to_Pd(random_distributor(rng, carrier, X), cap)
        return _pointwise_join(carrier, g, identity_functor(carrier))

    for _ in range(64):
        h1, h2 = step(), step()
        for h in (h1, h1.then(h2), h2.then(h1)):
            if not h.then(h).equals(h):
                return h
    return None


def mutate_closure_break_inflation(X: QCategory, kind: str = "P", cap=None):
    """Map every element to the least element of its type: enriched and
    idempotent but not inflationary on carriers with > 1 element per type."""
    carrier = P(X, cap) if kind == "P" else Pd(X, cap)
    Q = X.Q
    table = np.zeros(carrier.n, dtype=np.int64)
    for i in range(carrier.n):
        s = int(carrier.types[i])
        if kind == "P":
            vec = Q.bot[X.types, np.full(X.n, s)]
        else:
            # the underlying order of a copresheaf carrier is reversed
            vec = Q.top[np.full(X.n, s), X.types]
        table[i] = carrier.index_of(s, vec)
    return QFunctor(carrier, carrier, table, "const-least")


def mutate_monoid_break_reflexivity(rng: SplitMix64, X: QCategory):
    for _ in range(64):
        alpha = random_monoid(rng, X)
        mat = alpha.mat.copy()
        x = rng.below(X.n)
        bot = int(X.Q.bot[X.types[x], X.types[x]])
        if X.Q.leq[X.Q.unit[X.types[x]], bot]:
            continue
        mat[x, x] = bot
        out = QDistributor(X, X, mat, validated=False, name="mut")
        if not check_dist_monoid(out)[0]:
            return out
    return None


def mutate_monoid_break_transitivity(rng: SplitMix64, X: QCategory):
    from .qdist import dist_join
    for _ in range(64):
        alpha = dist_join([identity_dist(X), random_distributor(rng, X, X)])
        ok, wit = check_dist_monoid(alpha)
        if not ok and "transitive-at" in (wit or {}):
            return alpha
    return None
