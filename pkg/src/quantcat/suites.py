"""Named verification suites over seeded finite instance sets.

Five suites: `lemmas2` (the toolbox of hom-set identities, Yoneda
machinery, Kan/Isbell adjunctions and the collage), `monads` (the 2-monad
laws of the five built-ins), `laws` (distributivity axioms, flat-law
uniqueness, strictness of the copresheaf law), `correspondence8` (the
law/extension bijection, closed forms, collage evaluation, graph
conditions, distributor-form algebras), and `theorems5_7` (the four
structure characterizations with random and mutated instances).

Every assertion becomes one report record carrying a stable anchor
string; identical configurations produce byte-identical reports.
"""

from __future__ import annotations

import hashlib
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import algebras as alg
from . import laws as lws
from .errors import CapExceeded, QuantcatError
from .io import SuiteConfig, parse_quantaloid_ref
from .monads import BUILTIN_MONADS, check_monad_laws
from .presheaf import (
    P,
    Pd,
    co_yoneda,
    f_dag_lower,
    f_dag_upper,
    f_lower,
    f_upper,
    inf_P,
    inf_Pd,
    isbell_down,
    isbell_up,
    kan_lower_dag,
    kan_lower_star,
    kan_upper_dag,
    kan_upper_star,
    sup_P,
    sup_Pd,
    transpose_to_P,
    transpose_to_Pd,
    untranspose_P,
    untranspose_Pd,
    yoneda,
)
from .qcat import (
    QCategory,
    QFunctor,
    TypedSet,
    check_adjoint,
    check_category,
    check_fully_faithful,
    check_functor,
    collage,
    enumerate_functors,
    essentially_surjective,
    functor_leq,
    identity_functor,
    is_separated,
    left_adjoint,
    right_adjoint,
    underlying_order,
)
from .qdist import (
    QDistributor,
    bottom_dist,
    cograph,
    compose,
    dist_eq,
    dist_leq,
    dist_meet,
    graph,
    identity_dist,
)
from .rand import SplitMix64, random_distributor, random_monoid
from .reports import record, summarize, to_jsonl

DISTS_PER_SIGNATURE = 20


# ---------------------------------------------------------------------------
# instance sets
# ---------------------------------------------------------------------------

def enumerate_categories(Q, max_size: int, limit: int = 64) -> list[QCategory]:
    """All categories with up to max_size elements, in canonical order."""
    out = []
    unit_upsets = {}
    for r in range(Q.n_objects):
        u = Q.unit[r]
        ids = Q.hom_ids[(r, r)]
        unit_upsets[r] = [int(e) for e in ids if Q.leq[u, e]]
    for size in range(1, max_size + 1):
        typings = [[]]
        for _ in range(size):
            typings = [t + [r] for t in typings for r in range(Q.n_objects)]
        for typing in typings:
            slots = [(i, j) for i in range(size) for j in range(size)]
            choices = [[]]
            for (i, j) in slots:
                if i == j:
                    opts = unit_upsets[typing[i]]
                else:
                    opts = [int(e) for e in Q.hom_ids[(typing[i], typing[j])]]
                choices = [c + [e] for c in choices for e in opts]
            for entry in choices:
                hom = np.array(entry, dtype=np.int32).reshape(size, size)
                base = TypedSet([f"x{k}" for k in range(size)], typing)
                try:
                    X = check_category(
                        Q, base, hom, f"{Q.name}:n{size}#{len(out):03d}")
                except QuantcatError:
                    continue
                out.append(X)
                if len(out) >= limit:
                    return out
    return out


def seeded_dists(rng: SplitMix64, X, Y, n=DISTS_PER_SIGNATURE):
    out = [random_distributor(rng, X, Y) for _ in range(n)]
    for k, d in enumerate(out):
        d.name = f"phi{k:02d}"
    return out


def _seed_for(seed: int, *parts: str) -> int:
    h = hashlib.sha1(("|".join(parts)).encode()).digest()
    return (seed ^ int.from_bytes(h[:8], "big")) & ((1 << 64) - 1)


class _Sink:
    def __init__(self, suite: str, Q):
        self.suite = suite
        self.qname = Q.name
        self.records: list[dict] = []

    def add(self, item: str, anchor: str, instance: str, verdict: str,
            **kw):
        self.records.append(record(
            f"{self.suite}/{self.qname}/{item}", self.suite, anchor,
            instance, verdict, **kw))

    def ok(self, item, anchor, instance, good: bool, witness=None, **kw):
        self.add(item, anchor, instance, "pass" if good else "fail",
                 witness=witness if not good else None, **kw)

    def guard(self, item, anchor, instance, thunk, **kw):
        try:
            thunk()
        except CapExceeded as e:
            self.add(item, anchor, instance, "skip", reason=str(e), **kw)


# ---------------------------------------------------------------------------
# lemmas2
# ---------------------------------------------------------------------------

def _complete_sup(C):
    return sup_P(C.base_X) if C.kind == "P" else sup_Pd(C.base_X)


def _complete_inf(C):
    return inf_P(C.base_X) if C.kind == "P" else inf_Pd(C.base_X)


def suite_lemmas2(Q, insts, seed, cap=None) -> list[dict]:
    s = _Sink("lemmas2", Q)
    rng = SplitMix64(_seed_for(seed, "lemmas2", Q.name))
    core = insts[:4]

    # residual adjunction on the base quantaloid, exhaustively
    bad = 0
    for r in range(Q.n_objects):
        for t in range(Q.n_objects):
            for ss in range(Q.n_objects):
                for v in Q.hom_ids[(ss, t)]:
                    for u in Q.hom_ids[(r, ss)]:
                        for w in Q.hom_ids[(r, t)]:
                            a = bool(Q.leq[Q.comp[v, u], w])
                            b = bool(Q.leq[u, Q.rda[v, w]])
                            c = bool(Q.leq[v, Q.lda[w, u]])
                            if not (a == b == c):
                                bad += 1
    s.ok("residual", "residual.adjunction", Q.name, bad == 0,
         witness={"violations": bad} if bad else None)

    for X in insts:
        inst = X.name

        def per_instance(X=X, inst=inst):
            PX, PdX = P(X, cap), Pd(X, cap)
            y, yd = yoneda(X, cap), co_yoneda(X, cap)
            ok = all(np.array_equal(PX.hom[y(x), :], PX.vectors[:, x])
                     for x in range(X.n))
            ok &= all(np.array_equal(PdX.hom[:, yd(x)], PdX.vectors[:, x])
                      for x in range(X.n))
            s.ok(f"{inst}/yoneda-eval", "yoneda.evaluation", inst, ok)
            s.ok(f"{inst}/yoneda-ff", "yoneda.fully-faithful", inst,
                 check_fully_faithful(y)[0] and check_fully_faithful(yd)[0])
            s.ok(f"{inst}/separated", "carrier.separated", inst,
                 is_separated(PX) and is_separated(PdX))
            sp, ip = sup_P(X, cap), inf_P(X, cap)
            sd, idg = sup_Pd(X, cap), inf_Pd(X, cap)
            s.ok(f"{inst}/sup-adj", "carrier.sup-adjunction", inst,
                 check_adjoint(sp, yoneda(PX, cap))
                 and check_adjoint(sd, yoneda(PdX, cap)))
            s.ok(f"{inst}/inf-adj", "carrier.inf-adjunction", inst,
                 check_adjoint(co_yoneda(PX, cap), ip)
                 and check_adjoint(co_yoneda(PdX, cap), idg))
            s.ok(f"{inst}/sup-triangle", "carrier.sup-of-representable",
                 inst,
                 yoneda(PX, cap).then(sp).equals(identity_functor(PX))
                 and co_yoneda(PdX, cap).then(idg).equals(
                     identity_functor(PdX))
                 and co_yoneda(PX, cap).then(ip).equals(identity_functor(PX))
                 and yoneda(PdX, cap).then(sd).equals(identity_functor(PdX)))
            s.ok(f"{inst}/lax-idem", "presheaf.lax-idempotent", inst,
                 functor_leq(f_lower(y, cap), yoneda(PX, cap))
                 and functor_leq(co_yoneda(PdX, cap),
                                 f_dag_lower(yd, cap)))
            order = underlying_order(X)
            s.ok(f"{inst}/order", "underlying.preorder", inst,
                 bool(order.diagonal().all())
                 and bool((order @ order <= order).all()))

        s.guard(f"{inst}/carriers", "carrier.construction", inst,
                per_instance)

        def tower(X=X, inst=inst):
            # triple construction: the sup adjunction one level up
            PX = P(X, cap)
            s.ok(f"{inst}/tower-sup-adj", "carrier.sup-adjunction-tower",
                 inst, check_adjoint(sup_P(PX, cap), yoneda(P(PX, cap), cap)))

        s.guard(f"{inst}/tower", "carrier.sup-adjunction-tower", inst, tower)

    # functor-level lemmas
    fs = []
    for A in core:
        fs.append(identity_functor(A))
    for A in core[:2]:
        for B in core[:3]:
            fs += enumerate_functors(A, B, limit=6)
    fs = fs[:24]

    for k, f in enumerate(fs):
        inst = f"{f.source.name}->{f.target.name}#{k:02d}"

        def per_functor(f=f, inst=inst, k=k):
            X, Y = f.source, f.target
            flo, fup = f_lower(f, cap), f_upper(f, cap)
            fdl, fdu = f_dag_lower(f, cap), f_dag_upper(f, cap)
            conds = [
                check_fully_faithful(f)[0],
                dist_eq(compose(graph(f), cograph(f)), identity_dist(X)),
                flo.then(fup).equals(identity_functor(P(X, cap))),
                fdl.then(fdu).equals(identity_functor(Pd(X, cap))),
                check_fully_faithful(flo)[0],
                check_fully_faithful(fdl)[0],
            ]
            s.ok(f"fun{k:02d}/ff-equiv", "fully-faithful.equivalences",
                 inst, len(set(conds)) == 1, witness={"conds": conds})
            if essentially_surjective(f):
                ok = dist_eq(compose(cograph(f), graph(f)), identity_dist(Y))
                surj = set(flo.table) == set(range(P(Y, cap).n))
                surj &= set(fdl.table) == set(range(Pd(Y, cap).n))
                ok2 = fup.then(flo).equals(identity_functor(P(Y, cap)))
                ok3 = fdu.then(fdl).equals(identity_functor(Pd(Y, cap)))
                s.ok(f"fun{k:02d}/ess-surj", "essentially-surjective.identities",
                     inst, bool(ok and ok2 and ok3 and surj))
            # transposes of graphs and cographs
            ok = transpose_to_P(graph(f), cap).equals(
                yoneda(Y, cap).then(fup))
            ok &= transpose_to_Pd(graph(f), cap).equals(
                f.then(co_yoneda(Y, cap)))
            ok &= transpose_to_Pd(graph(f), cap).equals(
                co_yoneda(X, cap).then(fdl))
            ok &= transpose_to_Pd(cograph(f), cap).equals(
                co_yoneda(Y, cap).then(fdu))
            ok &= transpose_to_P(cograph(f), cap).equals(
                f.then(yoneda(Y, cap)))
            ok &= transpose_to_P(cograph(f), cap).equals(
                yoneda(X, cap).then(flo))
            s.ok(f"fun{k:02d}/transpose-graph", "functor.transpose-identities",
                 inst, bool(ok))
            # double-lift coincidences coming from the two adjunctions
            ok = f_lower(fdl, cap).equals(f_upper(fdu, cap))
            ok &= f_upper(flo, cap).equals(f_lower(fup, cap))
            ok &= f_dag_upper(fdl, cap).equals(f_dag_lower(fdu, cap))
            ok &= f_dag_lower(flo, cap).equals(f_dag_upper(fup, cap))
            s.ok(f"fun{k:02d}/double-lift", "functor.double-lift-identities",
                 inst, bool(ok))
            # naturality squares through the Yoneda embeddings
            ok = dist_eq(compose(cograph(f), graph(yoneda(X, cap))),
                         compose(graph(yoneda(Y, cap)), cograph(flo)))
            ok &= sup_P(X, cap).then(flo).equals(
                f_lower(flo, cap).then(sup_P(Y, cap)))
            ok &= fdu.then(f_dag_lower(yoneda(X, cap), cap)).equals(
                f_dag_lower(yoneda(Y, cap), cap).then(
                    f_dag_upper(flo, cap)))
            s.ok(f"fun{k:02d}/yoneda-nat", "functor.yoneda-naturality",
                 inst, bool(ok))
            ok = dist_eq(compose(cograph(co_yoneda(X, cap)), graph(f)),
                         compose(graph(fdl), cograph(co_yoneda(Y, cap))))
            ok &= f_dag_upper(co_yoneda(X, cap), cap).then(fdl).equals(
                f_dag_lower(fdl, cap).then(
                    f_dag_upper(co_yoneda(Y, cap), cap)))
            ok &= f_upper(f, cap).then(f_lower(co_yoneda(X, cap), cap)) \
                .equals(f_lower(co_yoneda(Y, cap), cap).then(
                    f_upper(fdl, cap)))
            s.ok(f"fun{k:02d}/coyoneda-nat", "functor.coyoneda-naturality",
                 inst, bool(ok))

        s.guard(f"fun{k:02d}", "functor.lemmas", inst, per_functor)

    # adjunction equivalences on composable endo-pairs
    pair_idx = 0
    for A in core[:2]:
        for f in enumerate_functors(A, A, limit=4):
            for g in enumerate_functors(A, A, limit=4):
                inst = f"{A.name}#adj{pair_idx:02d}"

                def adj_pair(f=f, g=g, inst=inst, A=A, pair_idx=pair_idx):
                    direct = functor_leq(identity_functor(A), f.then(g)) \
                        and functor_leq(g.then(f), identity_functor(A))
                    conds = [
                        direct,
                        check_adjoint(f, g),
                        f_upper(f, cap).equals(f_lower(g, cap)),
                        f_dag_lower(f, cap).equals(f_dag_upper(g, cap)),
                        check_adjoint(f_lower(f, cap), f_lower(g, cap)),
                        check_adjoint(f_upper(g, cap), f_upper(f, cap)),
                        check_adjoint(f_dag_lower(f, cap),
                                      f_dag_lower(g, cap)),
                        check_adjoint(f_dag_upper(g, cap),
                                      f_dag_upper(f, cap)),
                    ]
                    s.ok(f"adj{pair_idx:02d}", "adjoint.equivalences", inst,
                         len(set(conds)) == 1, witness={"conds": conds})

                s.guard(f"adj{pair_idx:02d}", "adjoint.equivalences", inst,
                        adj_pair)
                pair_idx += 1

    # functor-order transfer on parallel pairs
    ord_idx = 0
    for A in core[:2]:
        gs = enumerate_functors(A, A, limit=4)
        for f in gs:
            for g in gs:
                inst = f"{A.name}#ord{ord_idx:02d}"

                def ord_pair(f=f, g=g, inst=inst, ord_idx=ord_idx):
                    conds = [
                        functor_leq(f, g),
                        dist_leq(graph(g), graph(f)),
                        dist_leq(cograph(f), cograph(g)),
                        functor_leq(f_lower(f, cap), f_lower(g, cap)),
                        functor_leq(f_dag_lower(f, cap), f_dag_lower(g, cap)),
                        functor_leq(f_upper(g, cap), f_upper(f, cap)),
                        functor_leq(f_dag_upper(g, cap),
                                    f_dag_upper(f, cap)),
                    ]
                    s.ok(f"ord{ord_idx:02d}", "functor-order.transfer", inst,
                         len(set(conds)) == 1, witness={"conds": conds})

                s.guard(f"ord{ord_idx:02d}", "functor-order.transfer", inst,
                        ord_pair)
                ord_idx += 1

    # sup/inf preservation against brute-forced adjoints
    lp_idx = 0
    for A in core[:2]:
        for f in enumerate_functors(A, A, limit=3):
            for g in (f_lower(f, cap), f_upper(f, cap)):
                inst = f"{A.name}#lp{lp_idx:02d}"

                def la_preserve(g=g, inst=inst, lp_idx=lp_idx):
                    src, tgt = g.source, g.target
                    lhs = f_lower(g, cap).then(_complete_sup(tgt))
                    rhs = _complete_sup(src).then(g)
                    holds = functor_leq(lhs, rhs)
                    eq = lhs.equals(rhs)
                    # g is a left adjoint iff it has a right adjoint
                    is_left = right_adjoint(g) is not None
                    lhs2 = _complete_inf(src).then(g)
                    rhs2 = f_dag_lower(g, cap).then(_complete_inf(tgt))
                    holds2 = functor_leq(lhs2, rhs2)
                    eq2 = lhs2.equals(rhs2)
                    is_right = left_adjoint(g) is not None
                    s.ok(f"lp{lp_idx:02d}", "complete.sup-preservation", inst,
                         holds and holds2 and (eq == is_left)
                         and (eq2 == is_right),
                         witness={"sup-eq": eq, "is-left-adjoint": is_left,
                                  "inf-eq": eq2, "is-right-adjoint": is_right})

                s.guard(f"lp{lp_idx:02d}", "complete.sup-preservation", inst,
                        la_preserve)
                lp_idx += 1

    # distributor-level lemmas over seeded pools
    d_idx = 0
    for A in core[:3]:
        for B in core[:3]:
            pool = seeded_dists(rng, A, B)
            pool.append(bottom_dist(A, B))
            if A.same_as(B):
                pool.append(identity_dist(A))
            for phi in pool:
                inst = f"{A.name}-|->{B.name}#{d_idx:03d}"

                def per_dist(phi=phi, A=A, B=B, inst=inst, d_idx=d_idx):
                    ku, kl = kan_upper_star(phi, cap), kan_lower_star(phi, cap)
                    kdl, kdu = kan_lower_dag(phi, cap), kan_upper_dag(phi, cap)
                    up, down = isbell_up(phi, cap), isbell_down(phi, cap)
                    s.ok(f"d{d_idx:03d}/kan", "kan.adjunctions", inst,
                         check_adjoint(ku, kl) and check_adjoint(kdl, kdu))
                    s.ok(f"d{d_idx:03d}/isbell", "isbell.adjunction", inst,
                         check_adjoint(up, down))
                    bar = transpose_to_P(phi, cap)
                    vec = transpose_to_Pd(phi, cap)
                    ok = bar.equals(yoneda(B, cap).then(ku))
                    ok &= vec.equals(co_yoneda(A, cap).then(kdu))
                    ok &= dist_eq(
                        compose(graph(yoneda(A, cap)), cograph(bar)), phi)
                    ok &= dist_eq(
                        compose(graph(vec), cograph(co_yoneda(B, cap))), phi)
                    ok &= dist_eq(compose(phi, graph(yoneda(B, cap))),
                                  compose(graph(yoneda(A, cap)),
                                          cograph(ku)))
                    ok &= dist_eq(compose(cograph(co_yoneda(A, cap)), phi),
                                  compose(graph(kdu),
                                          cograph(co_yoneda(B, cap))))
                    s.ok(f"d{d_idx:03d}/transpose", "distributor.transposes",
                         inst, bool(ok))
                    ok = dist_eq(untranspose_P(bar), phi)
                    ok &= dist_eq(untranspose_Pd(vec), phi)
                    s.ok(f"d{d_idx:03d}/untranspose",
                         "distributor.transpose-roundtrip", inst, bool(ok))
                    # collage
                    Z, u, v = collage(phi)
                    ok = check_fully_faithful(u)[0] \
                        and check_fully_faithful(v)[0]
                    ok &= dist_eq(compose(graph(u), cograph(v)), phi)
                    s.ok(f"d{d_idx:03d}/collage", "collage.recovers", inst,
                         bool(ok))

                s.guard(f"d{d_idx:03d}", "distributor.lemmas", inst, per_dist)
                d_idx += 1

                # order transfer against the meet with the next pool member
                other = pool[0]
                inst2 = f"{inst}/order"

                def dist_order(phi=phi, other=other, inst2=inst2,
                               d_idx=d_idx):
                    smaller = dist_meet([phi, other])
                    for lo, hi in ((smaller, phi), (phi, other)):
                        conds = [
                            dist_leq(lo, hi),
                            functor_leq(kan_upper_star(lo, cap),
                                        kan_upper_star(hi, cap)),
                            functor_leq(kan_upper_dag(hi, cap),
                                        kan_upper_dag(lo, cap)),
                            functor_leq(transpose_to_P(lo, cap),
                                        transpose_to_P(hi, cap)),
                            functor_leq(transpose_to_Pd(hi, cap),
                                        transpose_to_Pd(lo, cap)),
                            functor_leq(isbell_up(hi, cap),
                                        isbell_up(lo, cap)),
                            functor_leq(isbell_down(lo, cap),
                                        isbell_down(hi, cap)),
                            functor_leq(kan_lower_star(hi, cap),
                                        kan_lower_star(lo, cap)),
                        ]
                        if len(set(conds)) != 1:
                            s.ok(f"d{d_idx:03d}/order",
                                 "distributor-order.transfer", inst2, False,
                                 witness={"conds": conds})
                            return
                    s.ok(f"d{d_idx:03d}/order", "distributor-order.transfer",
                         inst2, True)

                s.guard(f"d{d_idx:03d}/order", "distributor-order.transfer",
                        inst2, dist_order)

    # composite transposes (two distributors and a functor)
    t_idx = 0
    A, B = core[0], core[min(1, len(core) - 1)]
    pool_ab = seeded_dists(rng, A, B, 4)
    pool_ba = seeded_dists(rng, B, A, 4)
    for phi in pool_ab:
        for psi in pool_ba:
            inst = f"{A.name}~{B.name}#t{t_idx:02d}"

            def transposes(phi=phi, psi=psi, inst=inst, t_idx=t_idx):
                comp = compose(phi, psi)            # psi . phi : A -|-> A
                lhs = transpose_to_P(comp, cap)
                ok = lhs.equals(
                    transpose_to_P(psi, cap).then(kan_upper_star(phi, cap)))
                ok &= lhs.equals(
                    transpose_to_P(psi, cap)
                    .then(f_lower(transpose_to_P(phi, cap), cap))
                    .then(sup_P(A, cap)))
                rhs = transpose_to_Pd(comp, cap)
                ok &= rhs.equals(
                    transpose_to_Pd(phi, cap).then(kan_upper_dag(psi, cap)))
                ok &= rhs.equals(
                    transpose_to_Pd(phi, cap)
                    .then(f_dag_lower(transpose_to_Pd(psi, cap), cap))
                    .then(inf_Pd(A, cap)))
                s.ok(f"t{t_idx:02d}", "transpose.of-composite", inst,
                     bool(ok))

            s.guard(f"t{t_idx:02d}", "transpose.of-composite", inst,
                    transposes)
            t_idx += 1

    for f in enumerate_functors(A, B, limit=2):
        for phi, psi in zip(pool_ab[:2], pool_ba[:2]):
            inst = f"{A.name}~{B.name}#tf{t_idx:02d}"

            def func_transposes(f=f, phi=phi, psi=psi, inst=inst,
                                t_idx=t_idx):
                # whiskering with a cograph / graph
                comp = compose(cograph(f), phi)     # phi . f^ : B -|-> B
                ok = transpose_to_P(comp, cap).equals(
                    transpose_to_P(phi, cap).then(f_lower(f, cap)))
                comp2 = compose(phi, cograph(f))    # f^ . phi : A -|-> A
                ok &= transpose_to_P(comp2, cap).equals(
                    f.then(transpose_to_P(phi, cap)))
                comp3 = compose(graph(f), psi)      # psi . f_* : A -|-> A
                ok &= transpose_to_Pd(comp3, cap).equals(
                    f.then(transpose_to_Pd(psi, cap)))
                comp4 = compose(psi, graph(f))      # f_* . psi : B -|-> B
                ok &= transpose_to_Pd(comp4, cap).equals(
                    transpose_to_Pd(psi, cap).then(f_dag_lower(f, cap)))
                s.ok(f"tf{t_idx:02d}", "transpose.functor-whiskering", inst,
                     bool(ok))

            s.guard(f"tf{t_idx:02d}", "transpose.functor-whiskering", inst,
                    func_transposes)
            t_idx += 1

    # left adjoints are determined on representables
    c_idx = 0
    for phi in pool_ab[:2]:
        for psi in pool_ab[:2]:
            inst = f"{A.name}~{B.name}#c{c_idx:02d}"

            def cancel(phi=phi, psi=psi, inst=inst, c_idx=c_idx):
                fL = kan_upper_star(phi, cap)   # P(B) -> P(A), left adjoint
                gA = kan_upper_star(psi, cap)
                lhs = functor_leq(yoneda(B, cap).then(fL),
                                  yoneda(B, cap).then(gA))
                full = functor_leq(fL, gA)
                s.ok(f"c{c_idx:02d}", "left-adjoint.representable-cancel",
                     inst, lhs == full,
                     witness={"on-representables": lhs, "everywhere": full})
                # dual form: the comparison target must be a right adjoint
                hs = enumerate_functors(B, A, limit=1)
                if hs:
                    fR = kan_lower_dag(phi, cap)       # Pd(B) -> Pd(A)
                    gR = f_dag_lower(hs[0], cap)       # right adjoint
                    lhs2 = functor_leq(co_yoneda(B, cap).then(fR),
                                       co_yoneda(B, cap).then(gR))
                    full2 = functor_leq(fR, gR)
                    s.ok(f"c{c_idx:02d}/dual",
                         "right-adjoint.corepresentable-cancel", inst,
                         lhs2 == full2,
                         witness={"on-corepresentables": lhs2,
                                  "everywhere": full2})

            s.guard(f"c{c_idx:02d}", "left-adjoint.representable-cancel",
                    inst, cancel)
            c_idx += 1

    # hom-set bijections on exhaustively enumerable signatures
    if A.n <= 2 and B.n <= 2 and Q.n_elements <= 4:
        def isbell_iso():
            all_d = _enumerate_distributors(A, B)
            seen = set()
            order_ok = True
            for phi in all_d:
                key = isbell_down(phi, cap).table.tobytes()
                if key in seen:
                    s.ok("iso/injective", "isbell.order-isomorphism",
                         f"{A.name}~{B.name}", False)
                    return
                seen.add(key)
            for phi in all_d[:8]:
                for psi in all_d[:8]:
                    lo = dist_leq(phi, psi)
                    hi = functor_leq(isbell_down(phi, cap),
                                     isbell_down(psi, cap))
                    up_rev = functor_leq(isbell_up(psi, cap),
                                         isbell_up(phi, cap))
                    if not (lo == hi == up_rev):
                        order_ok = False
            s.ok("iso/injective", "isbell.order-isomorphism",
                 f"{A.name}~{B.name}", order_ok)

        s.guard("iso/injective", "isbell.order-isomorphism",
                f"{A.name}~{B.name}", isbell_iso)
    return s.records


def _enumerate_distributors(A, B, limit=512):
    from .qdist import check_distributor
    Q = A.Q
    slots = [(i, j) for i in range(A.n) for j in range(B.n)]
    out = []
    choices = [[]]
    for (i, j) in slots:
        ids = Q.hom_ids[(int(A.types[i]), int(B.types[j]))]
        choices = [c + [int(e)] for c in choices for e in ids]
        if len(choices) > limit * 8:
            return out
    for entry in choices:
        mat = np.array(entry, dtype=np.int32).reshape(A.n, B.n)
        d = QDistributor(A, B, mat)
        if check_distributor(d)[0]:
            d.validated = True
            out.append(d)
            if len(out) >= limit:
                break
    return out


# ---------------------------------------------------------------------------
# monads
# ---------------------------------------------------------------------------

def suite_monads(Q, insts, seed, cap=None) -> list[dict]:
    s = _Sink("monads", Q)
    core = insts[:3]
    for name, mk in BUILTIN_MONADS.items():
        T = mk()
        recs = check_monad_laws(T, core, cap=cap)
        for i, r in enumerate(recs):
            s.add(f"{name}/law{i:03d}-{r['law']}", f"monad.{r['law']}",
                  r["instance"], r["verdict"],
                  law=name, witness=r.get("witness"),
                  reason=r.get("reason"))
        for X in core:
            def hyp(T=T, X=X, name=name):
                ok, wit = check_fully_faithful(T.fmap(yoneda(X, cap), cap))
                s.ok(f"{name}/{X.name}/hypothesis",
                     "flat-extension.hypothesis", X.name, ok,
                     witness=wit, law=name)

            s.guard(f"{name}/{X.name}/hypothesis",
                    "flat-extension.hypothesis", X.name, hyp, law=name)
    for X in core:
        def ppd(X=X):
            from .monads import monad_PPd
            s.ok(f"PPd/{X.name}/carrier", "double-presheaf.carrier-identity",
                 X.name,
                 monad_PPd().obj(X, cap).fingerprint
                 == P(Pd(X, cap), cap).fingerprint, law="PPd")

        s.guard(f"PPd/{X.name}/carrier", "double-presheaf.carrier-identity",
                X.name, ppd, law="PPd")
    return s.records


# ---------------------------------------------------------------------------
# laws
# ---------------------------------------------------------------------------

def suite_laws(Q, insts, seed, cap=None, law_override=None) -> list[dict]:
    s = _Sink("laws", Q)
    core = insts[:3]
    fs = [identity_functor(core[0])]
    if len(core) >= 2:
        fs += enumerate_functors(core[0], core[1], limit=3)
    for name in BUILTIN_MONADS:
        T = BUILTIN_MONADS[name]()
        law = law_override(name) if law_override else None
        law = law or lws.BUILTIN_LAWS[name]()
        gen = lws.generic_flat_law(T)
        recs = lws.check_law_axioms(law, core, fs, cap=cap)
        strict_b, strict_c, any_fail = True, True, False
        for i, r in enumerate(recs):
            s.add(f"{name}/ax{i:03d}-{r['axiom']}",
                  f"distributive-law.axiom-{r['axiom']}",
                  r["instance"], r["verdict"], law=law.name,
                  axiom=r["axiom"], witness=r.get("witness"),
                  reason=r.get("reason"))
            if r["axiom"] == "b" and r["verdict"] not in ("strict", "skip"):
                strict_b = False
            if r["axiom"] == "c" and r["verdict"] not in ("strict", "skip"):
                strict_c = False
            if r["verdict"] == "fail":
                any_fail = True
        s.ok(f"{name}/flat-strictness", "flat-law.unit-mult-strict",
             ",".join(X.name for X in core),
             strict_b and strict_c and not any_fail, law=law.name)
        if name == "Pd":
            lax_only = [r for r in recs if r["verdict"] == "lax"]
            s.ok(f"{name}/all-strict", "copresheaf-law.strict",
                 ",".join(X.name for X in core), not lax_only, law=law.name,
                 witness={"lax-only": len(lax_only)} if lax_only else None)
        for X in core:
            def cmp_generic(X=X, law=law, gen=gen, name=name):
                s.ok(f"{name}/{X.name}/closed-form", "flat-law.unique",
                     X.name, gen.at(X, cap).equals(law.at(X, cap)),
                     law=law.name)

            s.guard(f"{name}/{X.name}/closed-form", "flat-law.unique",
                    X.name, cmp_generic, law=law.name)
    # the copresheaf law is right adjoint to the opposite-direction one
    for X in core:
        def stubbe(X=X):
            comp = f_lower(f_dag_lower(yoneda(X, cap), cap), cap) \
                .then(sup_Pd(P(X, cap), cap))
            s.ok(f"Pd/{X.name}/opposite-adjoint",
                 "copresheaf-law.right-adjoint-of-opposite", X.name,
                 check_adjoint(comp, lws.law_Pd().at(X, cap)), law="law[Pd]")

        s.guard(f"Pd/{X.name}/opposite-adjoint",
                "copresheaf-law.right-adjoint-of-opposite", X.name, stubbe,
                law="law[Pd]")
    return s.records


# ---------------------------------------------------------------------------
# correspondence8
# ---------------------------------------------------------------------------

def suite_correspondence8(Q, insts, seed, cap=None,
                          law_override=None) -> list[dict]:
    s = _Sink("correspondence8", Q)
    rng = SplitMix64(_seed_for(seed, "correspondence8", Q.name))
    core = insts[:3]
    A = core[0]
    B = core[1] if len(core) > 1 else core[0]
    dists = seeded_dists(rng, A, B, 6) + [identity_dist(A)]
    back = seeded_dists(rng, B, A, 3)
    fs = [identity_functor(A)] + enumerate_functors(A, B, limit=3)

    for name in BUILTIN_MONADS:
        T = BUILTIN_MONADS[name]()
        law = law_override(name) if law_override else None
        law = law or lws.BUILTIN_LAWS[name]()
        ext = lws.extension_from_law(law)

        for X in core:
            def rt_law(X=X, law=law, ext=ext, name=name):
                again = lws.law_from_extension(ext)
                s.ok(f"{name}/{X.name}/law-roundtrip",
                     "law-extension.roundtrip-law", X.name,
                     again.at(X, cap).equals(law.at(X, cap)), law=law.name)

            s.guard(f"{name}/{X.name}/law-roundtrip",
                    "law-extension.roundtrip-law", X.name, rt_law,
                    law=law.name)

        for i, phi in enumerate(dists):
            inst = f"{phi.name}#{i}"

            def rt_ext(phi=phi, inst=inst, name=name, law=law, ext=ext, i=i):
                again = lws.extension_from_law(lws.law_from_extension(ext))
                s.ok(f"{name}/ext-roundtrip{i:02d}",
                     "law-extension.roundtrip-extension", inst,
                     dist_eq(again.at(phi, cap), ext.at(phi, cap)),
                     law=law.name)
                s.ok(f"{name}/closed{i:02d}", "extension.closed-form", inst,
                     dist_eq(ext.at(phi, cap),
                             lws.closed_form_extension(name, phi, cap)),
                     law=law.name)
                s.ok(f"{name}/collage{i:02d}", "extension.via-collage", inst,
                     dist_eq(ext.at(phi, cap),
                             lws.collage_extension(T, phi, cap)),
                     law=law.name)

            s.guard(f"{name}/ext{i:02d}", "extension.evaluations", inst,
                    rt_ext, law=law.name)

        recs = lws.check_extension_axioms(ext, core[:2], dists[:4] + back[:2],
                                          fs, cap=cap)
        for i, r in enumerate(recs):
            s.add(f"{name}/extax{i:03d}-{r['axiom']}",
                  f"extension.{r['axiom']}", r["instance"], r["verdict"],
                  law=law.name, axiom=r["axiom"], witness=r.get("witness"),
                  reason=r.get("reason"))

        # flatness of the extension matches strictness of the unit axiom
        for X in core[:2]:
            def flat_iff(X=X, law=law, ext=ext, name=name):
                lifted = ext.at(identity_dist(X), cap)
                is_flat = dist_eq(lifted, identity_dist(T.obj(X, cap)))
                lhs = yoneda(T.obj(X, cap), cap)
                rhs = T.fmap(yoneda(X, cap), cap).then(law.at(X, cap))
                b_strict = lhs.equals(rhs)
                s.ok(f"{name}/{X.name}/flat-iff-strict-b",
                     "flat.iff-unit-strict", X.name, is_flat == b_strict,
                     law=law.name,
                     witness={"flat": is_flat, "b-strict": b_strict})

            s.guard(f"{name}/{X.name}/flat-iff-strict-b",
                    "flat.iff-unit-strict", X.name, flat_iff, law=law.name)

        # distributor-form structures match algebra-form structures
        for k in range(4):
            def tq_agree(k=k, name=name, law=law, ext=ext):
                X = core[k % len(core)]
                TX = T.obj(X, cap)
                alpha = random_distributor(rng, X, TX)
                C = alg.TQCategory(X, alpha, ext)
                Aalg = alg.algebra_from_TQ(C, law)
                v1 = [r["verdict"] for r in alg.check_TQ_category(C, cap)]
                v2 = [r["verdict"] for r in alg.check_lax_algebra(Aalg, cap)]
                s.ok(f"{name}/tq{k}", "distributor-form.verdict-agreement",
                     f"{X.name}#{k}", v1 == v2, law=law.name,
                     witness={"tq": v1, "algebra": v2})
                rt = alg.TQ_from_algebra(Aalg, ext)
                s.ok(f"{name}/tq{k}/roundtrip", "distributor-form.roundtrip",
                     f"{X.name}#{k}", dist_eq(rt.alpha, alpha), law=law.name)

            s.guard(f"{name}/tq{k}", "distributor-form.verdict-agreement",
                    f"#{k}", tq_agree, law=law.name)

        # morphism condition agreement
        for k, h in enumerate(fs[:3]):
            def tq_hom(h=h, k=k, name=name, law=law, ext=ext):
                X, Y = h.source, h.target
                a1 = random_distributor(rng, X, T.obj(X, cap))
                b1 = random_distributor(rng, Y, T.obj(Y, cap))
                C = alg.TQCategory(X, a1, ext)
                D = alg.TQCategory(Y, b1, ext)
                hom_ok, _ = alg.check_lax_hom(
                    h, alg.algebra_from_TQ(C, law), alg.algebra_from_TQ(D, law),
                    cap)
                tq_ok, _ = alg.check_TQ_functor(h, C, D, cap)
                s.ok(f"{name}/tqf{k}", "distributor-form.morphism-agreement",
                     f"{X.name}->{Y.name}", hom_ok == tq_ok, law=law.name)

            s.guard(f"{name}/tqf{k}", "distributor-form.morphism-agreement",
                    f"#{k}", tq_hom, law=law.name)

    # identity monad: distributor-form structures are exactly monoids
    for k in range(4):
        def id_monoid(k=k):
            X = core[k % len(core)]
            ext = lws.extension_from_law(lws.law_Id())
            alpha = random_distributor(rng, X, X) if k % 2 else \
                random_monoid(rng, X)
            C = alg.TQCategory(X, alpha, ext)
            tq = all(r["verdict"] == "pass"
                     for r in alg.check_TQ_category(C, cap))
            mono = alg.check_dist_monoid(alpha)[0]
            s.ok(f"Id/monoid{k}", "identity-monad.structures-are-monoids",
                 f"{X.name}#{k}", tq == mono,
                 witness={"tq": tq, "monoid": mono})

        s.guard(f"Id/monoid{k}", "identity-monad.structures-are-monoids",
                f"#{k}", id_monoid)
    return s.records


# ---------------------------------------------------------------------------
# theorems5_7
# ---------------------------------------------------------------------------

def _structures_per_instance(n_structs, pool):
    per = max(1, (n_structs + len(pool) - 1) // len(pool))
    plan = [(X, per) for X in pool]
    return plan


def suite_theorems5_7(Q, insts, seed, cap=None, n_structs=14,
                      n_mutants=3, law_override=None) -> list[dict]:
    s = _Sink("theorems5_7", Q)
    rng = SplitMix64(_seed_for(seed, "theorems5_7", Q.name))
    light = insts[:3]

    def get_law(name):
        law = law_override(name) if law_override else None
        return law or lws.BUILTIN_LAWS[name]()

    # -- closure spaces, twice: self-distribution and double copresheaf --
    for theorem, mk_alg, from_alg, law_name in (
            ("closure-P", alg.closure_to_algebra, alg.algebra_to_closure,
             "P"),
            ("closure-PdP", alg.closureP_to_PdP_algebra,
             alg.PdP_algebra_to_closureP, "PdP")):
        law = get_law(law_name)
        idx = 0
        for X, per in _structures_per_instance(n_structs, light):
            for _ in range(per):
                inst = f"{X.name}#{idx:03d}"

                def run(X=X, inst=inst, idx=idx, law=law, mk_alg=mk_alg,
                        from_alg=from_alg, theorem=theorem):
                    c = alg.random_closure_operation(rng, X, "P", cap)
                    good_c, wit_c = alg.check_closure_operation(c)
                    A = mk_alg(alg.ClosureSpace(X, c), law, cap)
                    recs = alg.check_lax_algebra(A, cap)
                    if any(r["verdict"] == "skip" for r in recs):
                        s.add(f"{theorem}/{idx:03d}", "structure.agreement",
                              inst, "skip", law=law.name,
                              reason="; ".join(r.get("reason", "")
                                               for r in recs))
                        return
                    good_a = all(r["verdict"] == "pass" for r in recs)
                    s.ok(f"{theorem}/{idx:03d}", "structure.agreement", inst,
                         good_c == good_a and good_c, law=law.name,
                         witness={"structure": good_c, "algebra": good_a})
                    s.ok(f"{theorem}/{idx:03d}/roundtrip",
                         "structure.roundtrip", inst,
                         from_alg(A).c.equals(c), law=law.name)
                    if theorem == "closure-PdP":
                        s.ok(f"{theorem}/{idx:03d}/identity",
                             "structure.map-identity", inst,
                             alg.structure_identity_PdP(A, cap)
                             and alg.structure_map_is_right_adjoint(A),
                             law=law.name)

                s.guard(f"{theorem}/{idx:03d}", "structure.agreement", inst,
                        run, law=law.name)
                idx += 1
        # mutants
        for m in range(n_mutants):
            inst = f"mut{m:02d}"

            def mutant(m=m, inst=inst, law=law, mk_alg=mk_alg,
                       theorem=theorem):
                X = light[m % len(light)]
                if m % 2 == 0:
                    c = alg.mutate_closure_break_idempotence(rng, X, "P", cap)
                else:
                    c = alg.mutate_closure_break_inflation(X, "P", cap)
                if c is None:
                    s.add(f"{theorem}/{inst}", "mutation.rejected-both",
                          f"{X.name}/{inst}", "skip",
                          reason="no mutant on this instance", law=law.name)
                    return
                good_c = alg.check_closure_operation(c)[0]
                A = mk_alg(alg.ClosureSpace(X, c), law, cap)
                recs = alg.check_lax_algebra(A, cap)
                if any(r["verdict"] == "skip" for r in recs):
                    s.add(f"{theorem}/{inst}", "mutation.rejected-both",
                          f"{X.name}/{inst}", "skip", reason="cap",
                          law=law.name)
                    return
                good_a = all(r["verdict"] == "pass" for r in recs)
                wit = [r.get("witness") for r in recs
                       if r["verdict"] == "fail"]
                s.ok(f"{theorem}/{inst}", "mutation.rejected-both",
                     f"{X.name}/{inst}",
                     (not good_c) and (not good_a) and bool(wit),
                     law=law.name,
                     witness={"structure": good_c, "algebra": good_a})

            s.guard(f"{theorem}/{inst}", "mutation.rejected-both", inst,
                    mutant, law=law.name)

    # -- monoids in the distributor quantaloid --
    law = get_law("Pd")
    idx = 0
    for X, per in _structures_per_instance(n_structs, light):
        for _ in range(per):
            inst = f"{X.name}#m{idx:03d}"

            def run_m(X=X, inst=inst, idx=idx, law=law):
                alpha = random_monoid(rng, X)
                good_m = alg.check_dist_monoid(alpha)[0]
                A = alg.monoid_to_algebra(alg.DistMonoid(X, alpha), law, cap)
                recs = alg.check_lax_algebra(A, cap)
                if any(r["verdict"] == "skip" for r in recs):
                    s.add(f"monoid/{idx:03d}", "structure.agreement", inst,
                          "skip", law=law.name, reason="cap")
                    return
                good_a = all(r["verdict"] == "pass" for r in recs)
                s.ok(f"monoid/{idx:03d}", "structure.agreement", inst,
                     good_m == good_a and good_m, law=law.name,
                     witness={"structure": good_m, "algebra": good_a})
                s.ok(f"monoid/{idx:03d}/roundtrip", "structure.roundtrip",
                     inst, dist_eq(alg.algebra_to_monoid(A, cap).alpha,
                                   alpha), law=law.name)
                s.ok(f"monoid/{idx:03d}/identity", "structure.map-identity",
                     inst, alg.structure_identity_Pd(A, cap)
                     and alg.structure_map_is_right_adjoint(A),
                     law=law.name)

            s.guard(f"monoid/{idx:03d}", "structure.agreement", inst, run_m,
                    law=law.name)
            idx += 1
    for m in range(n_mutants):
        inst = f"mutm{m:02d}"

        def mutant_m(m=m, inst=inst, law=law):
            X = light[m % len(light)]
            bad = alg.mutate_monoid_break_reflexivity(rng, X) if m % 2 == 0 \
                else alg.mutate_monoid_break_transitivity(rng, X)
            if bad is None:
                s.add(f"monoid/{inst}", "mutation.rejected-both",
                      f"{X.name}/{inst}", "skip",
                      reason="no mutant on this instance", law=law.name)
                return
            good_m, wit_m = alg.check_dist_monoid(bad)
            A = alg.monoid_to_algebra(alg.DistMonoid(X, bad), law, cap)
            recs = alg.check_lax_algebra(A, cap)
            if any(r["verdict"] == "skip" for r in recs):
                s.add(f"monoid/{inst}", "mutation.rejected-both",
                      f"{X.name}/{inst}", "skip", reason="cap", law=law.name)
                return
            good_a = all(r["verdict"] == "pass" for r in recs)
            corresponding = True
            if not good_m and "reflexive-at" in (wit_m or {}):
                unit_wits = [r["witness"].get("x") for r in recs
                             if r["axiom"] == "lax-unit"
                             and r["verdict"] == "fail" and r.get("witness")]
                corresponding = wit_m["reflexive-at"] in unit_wits
            s.ok(f"monoid/{inst}", "mutation.rejected-both",
                 f"{X.name}/{inst}",
                 (not good_m) and (not good_a) and corresponding,
                 law=law.name,
                 witness={"structure": good_m, "algebra": good_a,
                          "witness-corresponds": corresponding})

        s.guard(f"monoid/{inst}", "mutation.rejected-both", inst, mutant_m,
                law=law.name)

    # -- interior structures --
    law = get_law("PPd")
    idx = 0
    for X, per in _structures_per_instance(n_structs, light):
        for _ in range(per):
            inst = f"{X.name}#i{idx:03d}"

            def run_i(X=X, inst=inst, idx=idx, law=law):
                c = alg.random_closure_operation(rng, X, "Pd", cap)
                good_c = alg.check_closure_operation(c)[0]
                A = alg.interior_to_algebra(alg.InteriorSpace(X, c), law, cap)
                recs = alg.check_lax_algebra(A, cap)
                if any(r["verdict"] == "skip" for r in recs):
                    s.add(f"interior/{idx:03d}", "structure.agreement", inst,
                          "skip", law=law.name, reason="cap")
                    return
                good_a = all(r["verdict"] == "pass" for r in recs)
                s.ok(f"interior/{idx:03d}", "structure.agreement", inst,
                     good_c == good_a and good_c, law=law.name,
                     witness={"structure": good_c, "algebra": good_a})
                s.ok(f"interior/{idx:03d}/roundtrip", "structure.roundtrip",
                     inst, alg.algebra_to_interior(A, cap).c.equals(c),
                     law=law.name)
                s.ok(f"interior/{idx:03d}/identity", "structure.map-identity",
                     inst, alg.structure_identity_PPd(A, cap)
                     and alg.structure_map_is_right_adjoint(A),
                     law=law.name)

            s.guard(f"interior/{idx:03d}", "structure.agreement", inst,
                    run_i, law=law.name)
            idx += 1
    for m in range(n_mutants):
        inst = f"muti{m:02d}"

        def mutant_i(m=m, inst=inst, law=law):
            X = light[m % len(light)]
            if m % 2 == 0:
                c = alg.mutate_closure_break_idempotence(rng, X, "Pd", cap)
            else:
                c = alg.mutate_closure_break_inflation(X, "Pd", cap)
            if c is None:
                s.add(f"interior/{inst}", "mutation.rejected-both",
                      f"{X.name}/{inst}", "skip",
                      reason="no mutant on this instance", law=law.name)
                return
            good_c = alg.check_closure_operation(c)[0]
            A = alg.interior_to_algebra(alg.InteriorSpace(X, c), law, cap)
            recs = alg.check_lax_algebra(A, cap)
            if any(r["verdict"] == "skip" for r in recs):
                s.add(f"interior/{inst}", "mutation.rejected-both",
                      f"{X.name}/{inst}", "skip", reason="cap", law=law.name)
                return
            good_a = all(r["verdict"] == "pass" for r in recs)
            s.ok(f"interior/{inst}", "mutation.rejected-both",
                 f"{X.name}/{inst}", (not good_c) and (not good_a),
                 law=law.name,
                 witness={"structure": good_c, "algebra": good_a})

        s.guard(f"interior/{inst}", "mutation.rejected-both", inst,
                mutant_i, law=law.name)

    # -- morphism equivalence and initial structures for the closure case --
    law = get_law("P")
    from .monads import monad_P
    T = monad_P()
    X = light[0]

    def morphisms(X=X, law=law):
        c = alg.random_closure_operation(rng, X, "P", cap)
        d = alg.random_closure_operation(rng, X, "P", cap)
        A = alg.closure_to_algebra(alg.ClosureSpace(X, c), law, cap)
        Bb = alg.closure_to_algebra(alg.ClosureSpace(X, d), law, cap)
        agree = True
        for h in enumerate_functors(X, X, limit=6):
            hom_ok, _ = alg.check_lax_hom(h, A, Bb, cap)
            cont = functor_leq(c.then(f_lower(h, cap)),
                               f_lower(h, cap).then(d))
            agree &= (hom_ok == cont)
        s.ok("morphism/closure", "morphism.continuity-agreement", X.name,
             agree, law=law.name)

    s.guard("morphism/closure", "morphism.continuity-agreement", X.name,
            morphisms, law=law.name)

    def initials(X=X, law=law):
        c = alg.random_closure_operation(rng, X, "P", cap)
        A1, recs1 = alg.initial_structure(
            T, law, [(identity_functor(X), c)], cap=cap)
        ok = A1.p.equals(c) and all(r["verdict"] == "pass" for r in recs1)
        A2, _ = alg.initial_structure(
            T, law, [(identity_functor(X), c), (identity_functor(X), c)],
            cap=cap)
        ok &= A2.p.equals(c)
        d = alg.random_closure_operation(rng, X, "P", cap)
        A3, recs3 = alg.initial_structure(
            T, law, [(identity_functor(X), c), (identity_functor(X), d)],
            cap=cap)
        # brute-force pointwise meet
        PX = P(X, cap)
        QQ = X.Q
        rows = QQ.meet[PX.vectors[c.table], PX.vectors[d.table]]
        ok &= np.array_equal(PX.vectors[A3.p.table], rows)
        ok &= all(r["verdict"] in ("pass", "skip") for r in recs3)
        s.ok("initial/closure", "initial-structure.meet", X.name, bool(ok),
             law=law.name)

    s.guard("initial/closure", "initial-structure.meet", X.name, initials,
            law=law.name)
    return s.records


# ---------------------------------------------------------------------------
# runner
# ---------------------------------------------------------------------------

SUITES = {
    "lemmas2": suite_lemmas2,
    "monads": suite_monads,
    "laws": suite_laws,
    "correspondence8": suite_correspondence8,
    "theorems5_7": suite_theorems5_7,
}


def _mutated_law_factory(mutate: str | None):
    """Mutation plugin: replaces a built-in law for harness runs."""
    if mutate is None:
        return None
    if mutate == "law_P_postcompose_top":
        def factory(name):
            if name != "P":
                return None
            base = lws.law_P()

            def component(X, cap=None):
                lam = base.at(X, cap)
                PTX = lam.target
                table = np.zeros(lam.source.n, dtype=np.int64)
                # send everything to the last element of its type block
                for i in range(lam.source.n):
                    t = int(PTX.types[lam(i)])
                    same = np.nonzero(PTX.types == t)[0]
                    table[i] = same[-1]
                return QFunctor(lam.source, PTX, table, "mutated")

            return lws.DistLaw(base.monad, "law[P-mutated]", component)

        return factory
    raise QuantcatError(f"unknown mutation plugin {mutate!r}")


def run_suites(config: SuiteConfig) -> tuple[list[dict], dict]:
    quantaloids = [parse_quantaloid_ref(r) for r in config.quantaloids]
    law_override = _mutated_law_factory(config.mutate)
    tasks = []
    for Q in quantaloids:
        insts = enumerate_categories(Q, config.max_category_size)
        for name in config.suites:
            fn = SUITES[name]
            if name in ("laws", "correspondence8", "theorems5_7"):
                tasks.append((name, Q, insts, law_override))
            else:
                tasks.append((name, Q, insts, None))

    records: list[dict] = []

    def run_task(task):
        name, Q, insts, override = task
        fn = SUITES[name]
        kw = {"cap": config.max_carrier}
        if override is not None:
            kw["law_override"] = override
        return fn(Q, insts, config.seed, **kw)

    if config.workers > 1:
        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            for recs in pool.map(run_task, tasks):
                records.extend(recs)
    else:
        for task in tasks:
            records.extend(run_task(task))
    records.sort(key=lambda r: r["item"])
    return records, summarize(records)


def report_text(records, config: SuiteConfig) -> str:
    return to_jsonl(records, config.to_doc())
