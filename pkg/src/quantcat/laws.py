"""Distributive laws over the presheaf monad and lax extensions to
distributors.

A law is a family of functors T(PX) -> P(TX); an extension sends each
distributor X -|-> Y to one TX -|-> TY.  The two presentations are
interchangeable (`extension_from_law` / `law_from_extension`), and for
functor parts that preserve full fidelity there is exactly one flat law,
computed generically as the transpose of the graph of T(yoneda).

Axiom checkers return per-instance records with verdicts in
{strict, lax, fail, skip} and full evaluation traces on failure.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import CapExceeded, HypothesisFailed
from .monads import Monad2
from .presheaf import (
    P,
    Pd,
    PresheafCategory,
    _functor_from_rows,
    f_dag_lower,
    f_dag_upper,
    f_lower,
    f_upper,
    kan_upper_dag,
    kan_upper_star,
    sup_P,
    transpose_to_P,
    untranspose_P,
    yoneda,
)
from .qcat import (
    QCategory,
    QFunctor,
    check_fully_faithful,
    functor_leq_witness,
    identity_functor,
)
from .qdist import (
    QDistributor,
    cograph,
    compose,
    dist_eq,
    dist_leq,
    dist_leq_witness,
    dist_meet,
    graph,
    identity_dist,
)


@dataclass
class DistLaw:
    """Family X |-> (component: T(PX) -> P(TX)), lazily memoized."""

    monad: Monad2
    name: str
    component: Callable
    _memo: dict = field(default_factory=dict)
    _lock: threading.Lock = field(default_factory=threading.Lock)

    def at(self, X: QCategory, cap=None) -> QFunctor:
        key = X.fingerprint
        with self._lock:
            got = self._memo.get(key)
        if got is None:
            got = self.component(X, cap)
            with self._lock:
                self._memo[key] = got
        return got


@dataclass
class LaxExtension:
    """Family phi |-> (lifted: TX -|-> TY), lazily memoized."""

    monad: Monad2
    name: str
    ext: Callable
    _memo: dict = field(default_factory=dict)
    _lock: threading.Lock = field(default_factory=threading.Lock)

    def at(self, phi: QDistributor, cap=None) -> QDistributor:
        key = phi.fingerprint
        with self._lock:
            got = self._memo.get(key)
        if got is None:
            got = self.ext(phi, cap)
            with self._lock:
                self._memo[key] = got
        return got


# ---------------------------------------------------------------------------
# the generic flat law and the four closed forms
# ---------------------------------------------------------------------------

def generic_flat_law(T: Monad2) -> DistLaw:
    """The unique flat law of T over the presheaf monad.

    Component at X: the transpose of the graph of T(yoneda), i.e.
    xi |-> hom(T(y)(-), xi).  Raises HypothesisFailed when T(y_X) is not
    fully faithful (then no flat law exists at X).
    """

    def component(X, cap=None):
        PX = P(X, cap)
        TX = T.obj(X, cap)
        TPX = T.obj(PX, cap)
        Ty = T.fmap(yoneda(X, cap), cap)
        ok, wit = check_fully_faithful(Ty)
        if not ok:
            raise HypothesisFailed(
                f"{T.name}(yoneda) is not fully faithful on {X.name}", wit)
        mat = TPX.hom[Ty.table[:, None], np.arange(TPX.n)[None, :]]
        return _functor_from_rows(
            TPX, P(TX, cap), np.ascontiguousarray(mat.T), TPX.types,
            f"flat[{T.name},{X.name}]")

    return DistLaw(T, f"generic[{T.name}]", component)


def law_Id() -> DistLaw:
    from .monads import monad_Id

    def component(X, cap=None):
        return identity_functor(P(X, cap))

    return DistLaw(monad_Id(), "law[Id]", component)


def law_P() -> DistLaw:
    """Self-distribution of the presheaf monad: y . sup on PPX."""
    from .monads import monad_P

    def component(X, cap=None):
        return sup_P(X, cap).then(yoneda(P(X, cap), cap))

    return DistLaw(monad_P(), "law[P]", component)


def law_Pd() -> DistLaw:
    """Strict law of the copresheaf monad: ((y)+)^! . y on Pd(PX)."""
    from .monads import monad_Pd

    def component(X, cap=None):
        g = f_dag_lower(yoneda(X, cap), cap)        # PdX -> PdPX
        return yoneda(Pd(P(X, cap), cap), cap).then(f_upper(g, cap))

    return DistLaw(monad_Pd(), "law[Pd]", component)


def law_PPd() -> DistLaw:
    """Law of the double presheaf monad: y . ((y)+)^! on PPd(PX)."""
    from .monads import monad_PPd

    def component(X, cap=None):
        g = f_dag_lower(yoneda(X, cap), cap)        # PdX -> PdPX
        return f_upper(g, cap).then(yoneda(P(Pd(X, cap), cap), cap))

    return DistLaw(monad_PPd(), "law[PPd]", component)


def law_PdP() -> DistLaw:
    """Law of the double copresheaf monad: y . (sup)+ on PdP(PX)."""
    from .monads import monad_PdP

    def component(X, cap=None):
        sd = f_dag_lower(sup_P(X, cap), cap)        # Pd(PPX) -> Pd(PX)
        return sd.then(yoneda(Pd(P(X, cap), cap), cap))

    return DistLaw(monad_PdP(), "law[PdP]", component)


BUILTIN_LAWS = {
    "Id": law_Id,
    "P": law_P,
    "Pd": law_Pd,
    "PPd": law_PPd,
    "PdP": law_PdP,
}


# ---------------------------------------------------------------------------
# verdict helpers
# ---------------------------------------------------------------------------

def _cmp_functors(f: QFunctor, g: QFunctor):
    """(verdict, witness) for f <= g, strict when the tables coincide
    (presheaf targets are separated, so map equality is equality)."""
    ok, wit = functor_leq_witness(f, g)
    if not ok:
        wit = dict(wit)
        x = list(f.source.ids).index(wit["x"])
        for side, h in (("lhs", f), ("rhs", g)):
            tgt = h.target
            wit[side] = tgt.describe(h(x)) if isinstance(
                tgt, PresheafCategory) else tgt.ids[h(x)]
        return "fail", wit
    if f.equals(g):
        return "strict", None
    return "lax", None


def _cmp_dists(phi: QDistributor, psi: QDistributor):
    ok, wit = dist_leq_witness(phi, psi)
    if not ok:
        return "fail", wit
    if dist_eq(phi, psi):
        return "strict", None
    return "lax", None


def _rec(law, instance, axiom, verdict, witness=None, reason=None):
    rec = {"law": law, "instance": instance, "axiom": axiom,
           "verdict": verdict}
    if witness:
        rec["witness"] = witness
    if reason:
        rec["reason"] = reason
    return rec


# ---------------------------------------------------------------------------
# the five law axioms
# ---------------------------------------------------------------------------

def check_law_axioms(law: DistLaw, X_instances, f_instances=None,
                     cap=None) -> list[dict]:
    """Evaluate the distributivity axioms on concrete instances.

    (a) naturality in functors; (b) presheaf-unit law; (c) presheaf-
    multiplication law; (d) unit law of T; (e) multiplication law of T.
    (c) and (e) climb triple towers and may skip by cap.
    """
    T = law.monad
    out = []

    def guarded(axiom, instance, thunk):
        try:
            verdict, wit = thunk()
            out.append(_rec(law.name, instance, axiom, verdict, wit))
        except (CapExceeded, HypothesisFailed) as e:
            out.append(_rec(law.name, instance, axiom, "skip",
                            reason=str(e)))

    for X in X_instances:
        inst = X.name

        def ax_b(X=X):
            lhs = yoneda(T.obj(X, cap), cap)
            rhs = T.fmap(yoneda(X, cap), cap).then(law.at(X, cap))
            return _cmp_functors(lhs, rhs)

        def ax_c(X=X):
            PX = P(X, cap)
            lhs = law.at(PX, cap).then(f_lower(law.at(X, cap), cap)) \
                .then(sup_P(T.obj(X, cap), cap))
            rhs = T.fmap(sup_P(X, cap), cap).then(law.at(X, cap))
            return _cmp_functors(lhs, rhs)

        def ax_d(X=X):
            lhs = f_lower(T.unit(X, cap), cap)
            rhs = T.unit(P(X, cap), cap).then(law.at(X, cap))
            return _cmp_functors(lhs, rhs)

        def ax_e(X=X):
            lhs = T.fmap(law.at(X, cap), cap) \
                .then(law.at(T.obj(X, cap), cap)) \
                .then(f_lower(T.mult(X, cap), cap))
            rhs = T.mult(P(X, cap), cap).then(law.at(X, cap))
            return _cmp_functors(lhs, rhs)

        guarded("b", inst, ax_b)
        guarded("c", inst, ax_c)
        guarded("d", inst, ax_d)
        guarded("e", inst, ax_e)

    for f in (f_instances or []):
        inst = f"{f.name}:{f.source.name}->{f.target.name}"

        def ax_a(f=f):
            lhs = law.at(f.source, cap).then(f_lower(T.fmap(f, cap), cap))
            rhs = T.fmap(f_lower(f, cap), cap).then(law.at(f.target, cap))
            return _cmp_functors(lhs, rhs)

        guarded("a", inst, ax_a)
    return out


# ---------------------------------------------------------------------------
# laws <-> extensions
# ---------------------------------------------------------------------------

def extension_from_law(law: DistLaw) -> LaxExtension:
    """Untranspose of (component . T(transpose phi)), one distributor at
    a time."""

    def ext(phi, cap=None):
        g = law.monad.fmap(transpose_to_P(phi, cap), cap)  # TY -> T(PX)
        h = g.then(law.at(phi.source, cap))                # TY -> P(TX)
        out = untranspose_P(h)
        out.name = f"{law.name}^[{phi.name}]"
        return out

    return LaxExtension(law.monad, f"ext[{law.name}]", ext)


def law_from_extension(ext: LaxExtension) -> DistLaw:
    """Component at X: transpose of the extension of the Yoneda graph."""

    def component(X, cap=None):
        lifted = ext.at(graph(yoneda(X, cap)), cap)        # TX -|-> T(PX)
        return transpose_to_P(lifted, cap)

    return DistLaw(ext.monad, f"law[{ext.name}]", component)


def closed_form_extension(which: str, phi: QDistributor,
                          cap=None) -> QDistributor:
    """Direct formulas for the extensions of the five built-in monads."""
    if which == "Id":
        return phi
    if which == "P":
        return cograph(kan_upper_star(phi, cap))
    if which == "Pd":
        return graph(kan_upper_dag(phi, cap))
    if which == "PPd":
        return cograph(f_upper(kan_upper_dag(phi, cap), cap))
    if which == "PdP":
        return graph(f_dag_upper(kan_upper_star(phi, cap), cap))
    raise KeyError(f"no closed-form extension named {which!r}")


def graph_pair_extension(T: Monad2, u: QFunctor, v: QFunctor,
                         cap=None) -> QDistributor:
    """Lift of cograph(v) . graph(u), evaluated as cograph(Tv) . graph(Tu)."""
    return compose(graph(T.fmap(u, cap)), cograph(T.fmap(v, cap)))


def collage_extension(T: Monad2, phi: QDistributor, cap=None) -> QDistributor:
    """Evaluate a flat extension through the collage injections of phi."""
    from .qcat import collage
    _, u, v = collage(phi)
    return graph_pair_extension(T, u, v, cap)


# ---------------------------------------------------------------------------
# extension axioms
# ---------------------------------------------------------------------------

def check_extension_axioms(ext: LaxExtension, instances, dists,
                           functors=None, cap=None) -> list[dict]:
    """Monotonicity, lax functoriality, the equivalent graph conditions,
    the two monad-extension laws (stated and adjoint form, which must
    agree), and flatness."""
    T = ext.monad
    out = []

    def guarded(axiom, instance, thunk):
        try:
            verdict, wit = thunk()
            out.append(_rec(ext.name, instance, axiom, verdict, wit))
        except CapExceeded as e:
            out.append(_rec(ext.name, instance, axiom, "skip",
                            reason=str(e)))

    for X in instances:
        def flat(X=X):
            lifted = ext.at(identity_dist(X), cap)
            unit = identity_dist(T.obj(X, cap))
            if dist_eq(lifted, unit):
                return "strict", None
            v, wit = _cmp_dists(unit, lifted)
            return ("lax", None) if v != "fail" else ("fail", wit)

        guarded("flat", X.name, flat)

    for i, phi in enumerate(dists):
        inst = f"{phi.name}#{i}"

        def mono(phi=phi):
            for psi in dists:
                if psi.same_signature(phi):
                    smaller = dist_meet([phi, psi])
                    if not dist_leq(ext.at(smaller, cap), ext.at(phi, cap)):
                        return "fail", {"with": psi.name}
            return "strict", None

        guarded("monotone", inst, mono)

        for j, psi in enumerate(dists):
            if psi.source.same_as(phi.target):
                def lax_comp(phi=phi, psi=psi):
                    lhs = compose(ext.at(phi, cap), ext.at(psi, cap))
                    rhs = ext.at(compose(phi, psi), cap)
                    return _cmp_dists(lhs, rhs)

                guarded("compose", f"{inst};{j}", lax_comp)

    graph_ok, cograph_eq_ok, graph_eq_ok, flat_ok = [], [], [], []
    for f in (functors or []):
        inst = f"{f.name}:{f.source.name}->{f.target.name}"
        try:
            Tf = T.fmap(f, cap)
        except CapExceeded as e:
            out.append(_rec(ext.name, inst, "graphs", "skip", reason=str(e)))
            continue

        def graphs(f=f, Tf=Tf):
            v1, w1 = _cmp_dists(graph(Tf), ext.at(graph(f), cap))
            v2, w2 = _cmp_dists(cograph(Tf), ext.at(cograph(f), cap))
            if "fail" in (v1, v2):
                return "fail", w1 or w2
            return ("strict" if (v1, v2) == ("strict", "strict") else "lax"), None

        guarded("graphs", inst, graphs)
        graph_ok.append(out[-1]["verdict"] != "fail")

        for phi in dists:
            if phi.target.same_as(f.target):
                def cograph_eq(f=f, Tf=Tf, phi=phi):
                    lhs = ext.at(compose(phi, cograph(f)), cap)
                    rhs = compose(ext.at(phi, cap), cograph(Tf))
                    if dist_eq(lhs, rhs):
                        return "strict", None
                    return "fail", dist_leq_witness(lhs, rhs)[1] or \
                        dist_leq_witness(rhs, lhs)[1]

                guarded("cograph-eq", f"{inst};{phi.name}", cograph_eq)
                cograph_eq_ok.append(out[-1]["verdict"] != "fail")
            if phi.source.same_as(f.target):
                def graph_eq(f=f, Tf=Tf, phi=phi):
                    lhs = ext.at(compose(graph(f), phi), cap)
                    rhs = compose(graph(Tf), ext.at(phi, cap))
                    if dist_eq(lhs, rhs):
                        return "strict", None
                    return "fail", dist_leq_witness(lhs, rhs)[1] or \
                        dist_leq_witness(rhs, lhs)[1]

                guarded("graph-eq", f"{inst};{phi.name}", graph_eq)
                graph_eq_ok.append(out[-1]["verdict"] != "fail")

    for r in out:
        if r["axiom"] == "flat":
            flat_ok.append(r["verdict"] != "fail")
    if graph_ok or cograph_eq_ok or graph_eq_ok:
        # the three graph-condition forms are equivalent; their verdicts
        # must agree across the sampled instances
        cond_iii = all(graph_ok)
        cond_i = all(flat_ok) and all(cograph_eq_ok)
        cond_ii = all(flat_ok) and all(graph_eq_ok)
        agree = cond_i == cond_ii == cond_iii
        out.append(_rec(ext.name, "all", "graph-conditions-agree",
                        "pass" if agree else "fail",
                        None if agree else {"i": cond_i, "ii": cond_ii,
                                            "iii": cond_iii}))

    for phi in dists:
        inst = f"{phi.name}:{phi.source.name}-|->{phi.target.name}"
        X, Y = phi.source, phi.target

        def unit_law(phi=phi, X=X, Y=Y):
            lhs = compose(cograph(T.unit(X, cap)), phi)
            rhs = compose(ext.at(phi, cap), cograph(T.unit(Y, cap)))
            v1, w1 = _cmp_dists(lhs, rhs)
            lhs2 = compose(phi, graph(T.unit(Y, cap)))
            rhs2 = compose(graph(T.unit(X, cap)), ext.at(phi, cap))
            v2, w2 = _cmp_dists(lhs2, rhs2)
            if (v1 == "fail") != (v2 == "fail"):
                return "fail", {"stated": v1, "adjoint-form": v2}
            if "fail" in (v1, v2):
                return "fail", w1 or w2
            return ("strict" if (v1, v2) == ("strict", "strict") else "lax"), None

        guarded("unit-law", inst, unit_law)

        def mult_law(phi=phi, X=X, Y=Y):
            TT_phi = ext.at(ext.at(phi, cap), cap)
            lhs = compose(cograph(T.mult(X, cap)), TT_phi)
            rhs = compose(ext.at(phi, cap), cograph(T.mult(Y, cap)))
            v1, w1 = _cmp_dists(lhs, rhs)
            lhs2 = compose(TT_phi, graph(T.mult(Y, cap)))
            rhs2 = compose(graph(T.mult(X, cap)), ext.at(phi, cap))
            v2, w2 = _cmp_dists(lhs2, rhs2)
            if (v1 == "fail") != (v2 == "fail"):
                return "fail", {"stated": v1, "adjoint-form": v2}
            if "fail" in (v1, v2):
                return "fail", w1 or w2
            return ("strict" if (v1, v2) == ("strict", "strict") else "lax"), None

        guarded("mult-law", inst, mult_law)
    return out
