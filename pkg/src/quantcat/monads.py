"""First-class 2-monads on enriched categories.

A monad is a value-level record of closures over validated constructions:
object map, arrow map, unit and multiplication components.  The five
built-ins are the identity, the presheaf and copresheaf monads, and their
two composites.  User-defined monads load from explicit table files for
counterexample experiments.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import CapExceeded, FingerprintMismatch
from .presheaf import (
    P,
    Pd,
    co_yoneda,
    f_dag_lower,
    f_dag_upper,
    f_lower,
    f_upper,
    inf_Pd,
    sup_P,
    yoneda,
)
from .qcat import (
    QCategory,
    QFunctor,
    TypedSet,
    check_category,
    check_fully_faithful,
    check_functor,
    enumerate_functors,
    functor_leq,
    identity_functor,
)


@dataclass
class Monad2:
    name: str
    obj: Callable
    fmap: Callable
    unit: Callable
    mult: Callable

    def double(self, X: QCategory, cap=None) -> QCategory:
        return self.obj(self.obj(X, cap), cap)


def monad_Id() -> Monad2:
    return Monad2(
        "Id",
        obj=lambda X, cap=None: X,
        fmap=lambda f, cap=None: f,
        unit=lambda X, cap=None: identity_functor(X),
        mult=lambda X, cap=None: identity_functor(X),
    )


def monad_P() -> Monad2:
    return Monad2(
        "P",
        obj=lambda X, cap=None: P(X, cap),
        fmap=lambda f, cap=None: f_lower(f, cap),
        unit=lambda X, cap=None: yoneda(X, cap),
        mult=lambda X, cap=None: sup_P(X, cap),
    )


def monad_Pd() -> Monad2:
    return Monad2(
        "Pd",
        obj=lambda X, cap=None: Pd(X, cap),
        fmap=lambda f, cap=None: f_dag_lower(f, cap),
        unit=lambda X, cap=None: co_yoneda(X, cap),
        mult=lambda X, cap=None: inf_Pd(X, cap),
    )


def monad_PPd() -> Monad2:
    """Presheaves of copresheaves, with unit y . yd and mult s . (yd)^!."""

    def obj(X, cap=None):
        return P(Pd(X, cap), cap)

    def fmap(f, cap=None):
        return f_lower(f_dag_lower(f, cap), cap)

    def unit(X, cap=None):
        return co_yoneda(X, cap).then(yoneda(Pd(X, cap), cap))

    def mult(X, cap=None):
        PPdX = P(Pd(X, cap), cap)
        return f_upper(co_yoneda(PPdX, cap), cap).then(sup_P(Pd(X, cap), cap))

    return Monad2("PPd", obj, fmap, unit, mult)


def monad_PdP() -> Monad2:
    """Copresheaves of presheaves, with unit yd . y and mult sd . y^+."""

    def obj(X, cap=None):
        return Pd(P(X, cap), cap)

    def fmap(f, cap=None):
        return f_dag_lower(f_lower(f, cap), cap)

    def unit(X, cap=None):
        return yoneda(X, cap).then(co_yoneda(P(X, cap), cap))

    def mult(X, cap=None):
        PdPX = Pd(P(X, cap), cap)
        return f_dag_upper(yoneda(PdPX, cap), cap).then(inf_Pd(P(X, cap), cap))

    return Monad2("PdP", obj, fmap, unit, mult)


BUILTIN_MONADS = {
    "Id": monad_Id,
    "P": monad_P,
    "Pd": monad_Pd,
    "PPd": monad_PPd,
    "PdP": monad_PdP,
}


# ---------------------------------------------------------------------------
# law checking
# ---------------------------------------------------------------------------

def _record(law, instance, verdict, witness=None, reason=None):
    rec = {"law": law, "instance": instance, "verdict": verdict}
    if witness:
        rec["witness"] = witness
    if reason:
        rec["reason"] = reason
    return rec


def _eq_or_witness(law, instance, f: QFunctor, g: QFunctor, out):
    if f.equals(g):
        out.append(_record(law, instance, "pass"))
    else:
        bad = int(np.argmin(f.table == g.table))
        out.append(_record(law, instance, "fail", {
            "at": f.source.ids[bad],
            "lhs": f.target.ids[f(bad)],
            "rhs": g.target.ids[g(bad)]}))


def check_monad_laws(T: Monad2, instances, functor_pairs=None, cap=None,
                     check_triples: bool = True, laws=None) -> list[dict]:
    """Per-law pass/fail/skip records with witnesses.

    `functor_pairs` is a list of composable (f, g) used for the arrow-map
    laws; when omitted, all functors among the first two instances are
    enumerated.  `laws` restricts the checked law names (useful for
    table-file monads that only carry some components).
    """
    out = []

    def _guard(law, instance, sink, thunk):
        if laws is not None and law not in laws:
            return
        try:
            thunk()
        except CapExceeded as e:
            sink.append(_record(law, instance, "skip", reason=f"cap: {e}"))

    fs = []
    if functor_pairs is None:
        for X in instances:
            fs.append(identity_functor(X))
        if len(instances) >= 2:
            fs += enumerate_functors(instances[0], instances[1], limit=9)
        pairs = [(f, g) for f in fs for g in fs
                 if f.target.same_as(g.source)][:16]
    else:
        pairs = functor_pairs
        fs = sorted({id(f): f for pair in pairs for f in pair}.values(),
                    key=lambda f: f.name)

    for X in instances:
        inst = X.name
        _guard("fmap-identity", inst, out, lambda X=X: _eq_or_witness(
            "fmap-identity", inst,
            T.fmap(identity_functor(X), cap), identity_functor(T.obj(X, cap)),
            out))
        _guard("unit-is-functor", inst, out, lambda X=X: out.append(_record(
            "unit-is-functor", inst,
            "pass" if check_functor(T.unit(X, cap))[0] else "fail")))
        _guard("assoc", inst, out,
               lambda X=X: check_triples and _eq_or_witness(
                   "assoc", inst,
                   T.fmap(T.mult(X, cap), cap).then(T.mult(X, cap)),
                   T.mult(T.obj(X, cap), cap).then(T.mult(X, cap)),
                   out))
        _guard("unit-triangle-left", inst, out, lambda X=X: _eq_or_witness(
            "unit-triangle-left", inst,
            T.unit(T.obj(X, cap), cap).then(T.mult(X, cap)),
            identity_functor(T.obj(X, cap)), out))
        _guard("unit-triangle-right", inst, out, lambda X=X: _eq_or_witness(
            "unit-triangle-right", inst,
            T.fmap(T.unit(X, cap), cap).then(T.mult(X, cap)),
            identity_functor(T.obj(X, cap)), out))

    for f, g in pairs:
        inst = f"{f.source.name}->{g.target.name}"
        _guard("fmap-compose", inst, out, lambda f=f, g=g: _eq_or_witness(
            "fmap-compose", inst,
            T.fmap(f.then(g), cap), T.fmap(f, cap).then(T.fmap(g, cap)), out))

    for f in fs:
        inst = f"{f.source.name}->{f.target.name}"
        _guard("fmap-is-functor", inst, out, lambda f=f: out.append(_record(
            "fmap-is-functor", inst,
            "pass" if check_functor(T.fmap(f, cap))[0] else "fail",
            check_functor(T.fmap(f, cap))[1])))
        _guard("unit-natural", inst, out, lambda f=f: _eq_or_witness(
            "unit-natural", inst,
            f.then(T.unit(f.target, cap)),
            T.unit(f.source, cap).then(T.fmap(f, cap)), out))
        _guard("mult-natural", inst, out, lambda f=f: _eq_or_witness(
            "mult-natural", inst,
            T.fmap(T.fmap(f, cap), cap).then(T.mult(f.target, cap)),
            T.mult(f.source, cap).then(T.fmap(f, cap)), out))
        _guard("fmap-preserves-ff", inst, out, lambda f=f: out.append(_record(
            "fmap-preserves-ff", inst,
            "pass" if (not check_fully_faithful(f)[0]
                       or check_fully_faithful(T.fmap(f, cap))[0])
            else "fail")))

    for f in fs:
        for g in fs:
            if f.source.same_as(g.source) and f.target.same_as(g.target) \
                    and functor_leq(f, g):
                inst = f"{f.source.name}->{f.target.name}"
                _guard("fmap-preserves-order", inst, out,
                       lambda f=f, g=g: out.append(_record(
                           "fmap-preserves-order", inst,
                           "pass" if functor_leq(T.fmap(f, cap),
                                                 T.fmap(g, cap))
                           else "fail")))
    return out


# ---------------------------------------------------------------------------
# user-defined monads from table files
# ---------------------------------------------------------------------------

def monad_from_tables(Q, doc: dict) -> Monad2:
    """Monad whose components are explicit tables keyed by fingerprint.

    doc = {"name": ..., "obj": {fp: {"carrier": [[id, type], ...],
    "hom": [[i, j, elem], ...]}}, "unit": {fp: table},
    "mult": {fp: table}, "fmap": {functor_fp: table}}
    Requests for categories outside the tables raise FingerprintMismatch.
    """

    def lookup(section, fp):
        table = doc.get(section, {})
        if fp not in table:
            raise FingerprintMismatch(
                f"{doc.get('name', 'monad')}: no {section} table for "
                f"fingerprint {fp}")
        return table[fp]

    def obj(X, cap=None):
        data = lookup("obj", X.fingerprint)
        ids = [c[0] for c in data["carrier"]]
        types = [Q.obj_index(c[1]) for c in data["carrier"]]
        n = len(ids)
        hom = np.full((n, n), -1, dtype=np.int32)
        for i, j, e in data["hom"]:
            r, s = types[int(i)], types[int(j)]
            hom[int(i), int(j)] = Q.elem_id(r, s, e)
        return check_category(Q, TypedSet(ids, types), hom,
                              f"{doc.get('name', 'T')}({X.name})")

    def fmap(f, cap=None):
        return QFunctor(obj(f.source), obj(f.target),
                        lookup("fmap", f.fingerprint), "Tf")

    def unit(X, cap=None):
        return QFunctor(X, obj(X), lookup("unit", X.fingerprint), "e")

    def mult(X, cap=None):
        TX = obj(X)
        return QFunctor(obj(TX), TX, lookup("mult", X.fingerprint), "m")

    return Monad2(doc.get("name", "user"), obj, fmap, unit, mult)


def monad_to_tables(T: Monad2, instances, functors=(), cap=None) -> dict:
    """Dump a monad's components on the given instances to a table doc.

    Tables are keyed by the fingerprints the *loaded* categories will
    carry, so the doc round-trips through monad_from_tables; derived
    carriers are re-keyed through the loader's rebuild path.
    """

    def tables_of(Z):
        return {
            "carrier": [[Z.ids[i], Z.Q.objects[int(Z.types[i])]]
                        for i in range(Z.n)],
            "hom": [[i, j, _local_name(Z, i, j)]
                    for i in range(Z.n) for j in range(Z.n)],
        }

    def rebuilt(Z):
        return check_category(
            Z.Q, TypedSet(list(Z.ids), Z.types.copy()), Z.hom.copy(), Z.name)

    doc = {"name": T.name, "obj": {}, "unit": {}, "mult": {}, "fmap": {}}
    loaded = {}
    for X in instances:
        TX = T.obj(X, cap)
        TTX = T.obj(TX, cap)
        doc["obj"][X.fingerprint] = tables_of(TX)
        loaded_TX = rebuilt(TX)
        loaded[TX.fingerprint] = loaded_TX
        doc["obj"][loaded_TX.fingerprint] = tables_of(TTX)
        doc["unit"][X.fingerprint] = [int(v) for v in T.unit(X, cap).table]
        doc["unit"][loaded_TX.fingerprint] = \
            [int(v) for v in T.unit(TX, cap).table]
        doc["mult"][X.fingerprint] = [int(v) for v in T.mult(X, cap).table]
    for f in functors:
        # key by the loaded functor's fingerprint
        lf_src = loaded.get(f.source.fingerprint, f.source)
        lf_tgt = loaded.get(f.target.fingerprint, f.target)
        key = QFunctor(lf_src, lf_tgt, f.table.copy()).fingerprint
        doc["fmap"][key] = [int(v) for v in T.fmap(f, cap).table]
    return doc


def _local_name(X, i, j):
    Q = X.Q
    lat = Q.homs[(int(X.types[i]), int(X.types[j]))]
    gid = int(X.hom[i, j])
    base = int(Q.hom_ids[(int(X.types[i]), int(X.types[j]))][0])
    return lat.elements[gid - base]
