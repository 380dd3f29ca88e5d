"""Presheaf and copresheaf carriers and the maps between them.

A presheaf on X with target type s is a vector sigma with sigma(x) in
hom(|x|, s) and sigma(w).hom(x, w) <= sigma(x); a copresheaf is the dual.
Carriers are enumerated completely (backtracking, canonical order: target
type first, then lexicographic on element ids) and cached by category
fingerprint; this cache is the only one in the package, and the composite
monad towers are keyed through it.

Batch evaluation treats a whole carrier as one matrix, so every operation
below is a single relation-kernel call plus index lookups.
"""

from __future__ import annotations

import hashlib
import threading

import numpy as np

from . import _kernels
from .config import (
    DEFAULT_CAP,
    ENUM_OPS_BUDGET,
    HOM_BYTES_LIMIT,
    VERIFY,
    VERIFY_SIZE_LIMIT,
)
from .errors import AdjunctionAssertionFailed, CapExceeded, SignatureMismatch
from .qcat import QCategory, QFunctor, TypedSet, check_adjoint
from .qdist import QDistributor

_CACHE: dict = {}
_CACHE_LOCK = threading.Lock()


class PresheafCategory(QCategory):
    """Carrier of all presheaves (kind 'P') or copresheaves (kind 'Pd')."""

    def __init__(self, Q, base, base_X: QCategory, vectors: np.ndarray,
                 kind: str, name: str):
        super().__init__(Q, base, None, name)
        self.base_X = base_X
        self.vectors = vectors
        self.kind = kind
        self._index = {}
        for i in range(vectors.shape[0]):
            self._index[(int(base.types[i]), vectors[i].tobytes())] = i

    @property
    def fingerprint(self) -> str:
        # fully determined by the base category, so no need to force the
        # hom matrix of a large derived carrier just to key a cache
        if self._fingerprint is None:
            h = hashlib.sha1()
            h.update(f"{self.kind}|".encode())
            h.update(self.base_X.fingerprint.encode())
            self._fingerprint = h.hexdigest()[:16]
        return self._fingerprint

    def _compute_hom(self) -> np.ndarray:
        Q = self.Q
        if 4 * self.n * self.n > HOM_BYTES_LIMIT:
            raise CapExceeded(
                self.n, self.n,
                f"hom matrix of {self.name} ({4 * self.n * self.n} bytes) "
                "exceeds the memory guard")
        init = self.top_against(self)
        table = Q.lda if self.kind == "P" else Q.rda
        return _kernels.pair_hom(self.vectors, table, Q.meet, init)

    def index_of(self, typ: int, vec: np.ndarray) -> int:
        key = (int(typ), np.ascontiguousarray(vec, dtype=np.int32).tobytes())
        got = self._index.get(key)
        if got is None:
            raise AdjunctionAssertionFailed(
                f"computed vector is not an element of {self.name}",
                {"type": self.Q.objects[int(typ)],
                 "vector": [self.Q.elem_name(int(v)) for v in vec]})
        return got

    def describe(self, i: int) -> dict:
        return {
            "id": self.ids[i],
            "type": self.Q.objects[int(self.types[i])],
            "vector": {x: self.Q.elem_name(int(v))
                       for x, v in zip(self.base_X.ids, self.vectors[i])},
        }


def _enumerate(X: QCategory, kind: str, cap: int) -> tuple[np.ndarray, np.ndarray]:
    """All valid vectors, grouped by target type, each group lexicographic.

    Positions are assigned most-constrained-first (then restored), which
    keeps the search tree thin near the root; the work budget turns
    pathological searches into structured skips instead of long stalls.
    """
    Q = X.Q
    n = X.n
    if isinstance(X, PresheafCategory) and n > cap:
        # X is separated, so the Yoneda embedding is injective and the new
        # carrier is at least as large as X itself.
        raise CapExceeded(n, cap, f"base carrier {X.name} already exceeds the cap")
    if X._hom is None and 4 * n * n > HOM_BYTES_LIMIT:
        raise CapExceeded(
            n, cap, f"hom matrix of {X.name} ({4 * n * n} bytes) exceeds the "
            "memory guard")
    if kind == "P":
        a = X.hom
        comp = Q.comp
    else:
        a = np.ascontiguousarray(X.hom.T)
        comp = np.ascontiguousarray(Q.comp.T)
    bot = Q.bot[0, 0]
    order = None
    if n > 1:
        score = (a != bot).sum(axis=0) + (a != bot).sum(axis=1)
        order = np.argsort(-score, kind="stable")
        a = np.ascontiguousarray(a[order][:, order])
    blocks, types = [], []
    total = 0
    for s in range(Q.n_objects):
        if n == 0:
            blocks.append(np.zeros((1, 0), dtype=np.int32))
            types.append(np.full(1, s, dtype=np.int32))
            total += 1
            continue
        cand, offs = [], [0]
        for k in range(n):
            x = int(order[k]) if order is not None else k
            tx = int(X.types[x])
            ids = Q.hom_ids[(tx, s)] if kind == "P" else Q.hom_ids[(s, tx)]
            keep = ids[Q.leq[comp[ids, a[k, k]], ids].astype(bool)]
            cand.append(keep)
            offs.append(offs[-1] + len(keep))
        flat = np.concatenate(cand).astype(np.int32)
        offs = np.array(offs, dtype=np.int64)
        out, count, status = _kernels.enum_vectors(
            flat, offs, a, comp, Q.leq, cap - total, ENUM_OPS_BUDGET)
        if status == 1:
            raise CapExceeded(total + count, cap)
        if status == 2:
            raise CapExceeded(total + count, cap, "search budget exhausted")
        if order is not None and count:
            inv = np.empty(n, dtype=np.int64)
            inv[order] = np.arange(n)
            out = np.ascontiguousarray(out[:, inv])
            out = out[np.lexsort(out.T[::-1])]
        blocks.append(out)
        types.append(np.full(count, s, dtype=np.int32))
        total += count
    return np.concatenate(blocks, axis=0), np.concatenate(types)


def _build(X: QCategory, kind: str, cap: int) -> PresheafCategory:
    vectors, types = _enumerate(X, kind, cap)
    prefix = "p" if kind == "P" else "d"
    ids = [f"{prefix}{i}" for i in range(vectors.shape[0])]
    name = ("P(" if kind == "P" else "Pd(") + X.name + ")"
    return PresheafCategory(X.Q, TypedSet(ids, types), X, vectors, kind, name)


def _carrier(X: QCategory, kind: str, cap: int | None) -> PresheafCategory:
    cap = DEFAULT_CAP if cap is None else cap
    key = (kind, X.fingerprint)
    with _CACHE_LOCK:
        got = _CACHE.get(key)
        if isinstance(got, CapExceeded):
            resource = "memory guard" in got.detail or "budget" in got.detail
            if resource or cap < got.estimated:
                raise CapExceeded(got.estimated, cap, got.detail)
            got = None
        if got is None:
            try:
                got = _build(X, kind, cap)
            except CapExceeded as e:
                _CACHE[key] = e
                raise
            _CACHE[key] = got
    if got.n > cap:
        raise CapExceeded(got.n, cap)
    return got


def P(X: QCategory, cap: int | None = None) -> PresheafCategory:
    return _carrier(X, "P", cap)


def Pd(X: QCategory, cap: int | None = None) -> PresheafCategory:
    return _carrier(X, "Pd", cap)


presheaf_category = P
copresheaf_category = Pd


def clear_cache():
    with _CACHE_LOCK:
        _CACHE.clear()


# ---------------------------------------------------------------------------
# building functors out of batch-computed vector matrices
# ---------------------------------------------------------------------------

def _functor_from_rows(source: QCategory, carrier: PresheafCategory,
                       rows: np.ndarray, types, name: str) -> QFunctor:
    table = np.zeros(source.n, dtype=np.int64)
    for i in range(source.n):
        table[i] = carrier.index_of(int(types[i]), rows[i])
    return QFunctor(source, carrier, table, name)


def _bot(Q, row_types, col_types):
    return Q.bot[np.asarray(row_types)[:, None], np.asarray(col_types)[None, :]]


def _top(Q, row_types, col_types):
    return Q.top[np.asarray(row_types)[:, None], np.asarray(col_types)[None, :]]


def _assert_adjoint(f: QFunctor, g: QFunctor, what: str):
    if not VERIFY:
        return
    if max(f.source.n, f.target.n) > VERIFY_SIZE_LIMIT:
        return
    if not check_adjoint(f, g):
        raise AdjunctionAssertionFailed(f"{what}: expected {f.name} -| {g.name}")


# ---------------------------------------------------------------------------
# Yoneda embeddings and the four (co)limit maps
# ---------------------------------------------------------------------------

def yoneda(X: QCategory, cap: int | None = None) -> QFunctor:
    """x |-> hom(-, x), landing in P(X); fully faithful by construction."""
    PX = P(X, cap)
    return _functor_from_rows(X, PX, np.ascontiguousarray(X.hom.T),
                              X.types, f"y[{X.name}]")


def co_yoneda(X: QCategory, cap: int | None = None) -> QFunctor:
    """x |-> hom(x, -), landing in Pd(X)."""
    PdX = Pd(X, cap)
    return _functor_from_rows(X, PdX, X.hom, X.types, f"yd[{X.name}]")


def sup_P(X: QCategory, cap: int | None = None) -> QFunctor:
    """PPX -> PX, the left adjoint of the Yoneda embedding of PX.

    Computed as Sigma . graph(y); the graph of y is the carrier matrix
    itself (an instance of the enriched Yoneda lemma, separately tested),
    which keeps this map independent of the hom matrix of PX.
    """
    PX = P(X, cap)
    PPX = P(PX, cap)
    Q = X.Q
    mat = _kernels.rel_compose(
        np.ascontiguousarray(PX.vectors.T), np.ascontiguousarray(PPX.vectors.T),
        Q.comp, Q.join, _bot(Q, X.types, PPX.types))
    out = _functor_from_rows(PPX, PX, np.ascontiguousarray(mat.T),
                             PPX.types, f"sup[{PX.name}]")
    _assert_adjoint(out, yoneda(PX, cap), "sup_P")
    return out


def inf_Pd(X: QCategory, cap: int | None = None) -> QFunctor:
    """PdPdX -> PdX, the right adjoint of the co-Yoneda embedding of PdX."""
    PdX = Pd(X, cap)
    PdPdX = Pd(PdX, cap)
    Q = X.Q
    mat = _kernels.rel_compose(
        PdPdX.vectors, PdX.vectors, Q.comp, Q.join,
        _bot(Q, PdPdX.types, X.types))
    out = _functor_from_rows(PdPdX, PdX, mat, PdPdX.types, f"inf[{PdX.name}]")
    _assert_adjoint(co_yoneda(PdX, cap), out, "inf_Pd")
    return out


def inf_P(X: QCategory, cap: int | None = None) -> QFunctor:
    """PdPX -> PX: tau |-> tau \\ graph(y); right adjoint of co-Yoneda on PX."""
    PX = P(X, cap)
    PdPX = Pd(PX, cap)
    Q = X.Q
    mat = _kernels.rel_rda(
        PdPX.vectors, np.ascontiguousarray(PX.vectors.T), Q.rda, Q.meet,
        _top(Q, X.types, PdPX.types))
    out = _functor_from_rows(PdPX, PX, np.ascontiguousarray(mat.T),
                             PdPX.types, f"inf[{PX.name}]")
    _assert_adjoint(co_yoneda(PX, cap), out, "inf_P")
    return out


def sup_Pd(X: QCategory, cap: int | None = None) -> QFunctor:
    """PPdX -> PdX: Sigma |-> cograph(yd) / Sigma; left adjoint of Yoneda."""
    PdX = Pd(X, cap)
    PPdX = P(PdX, cap)
    Q = X.Q
    mat = _kernels.rel_lda(
        PdX.vectors, np.ascontiguousarray(PPdX.vectors.T), Q.lda, Q.meet,
        _top(Q, PPdX.types, X.types))
    out = _functor_from_rows(PPdX, PdX, mat, PPdX.types, f"sup[{PdX.name}]")
    _assert_adjoint(out, yoneda(PdX, cap), "sup_Pd")
    return out


# ---------------------------------------------------------------------------
# functors induced on carriers by a functor f: X -> Y
# ---------------------------------------------------------------------------

def f_lower(f: QFunctor, cap: int | None = None) -> QFunctor:
    """f_!: PX -> PY, sigma |-> sigma . cograph(f)."""
    X, Y = f.source, f.target
    PX, PY = P(X, cap), P(Y, cap)
    Q = X.Q
    cog = Y.hom[np.arange(Y.n)[:, None], f.table[None, :]]
    mat = _kernels.rel_compose(
        np.ascontiguousarray(cog), np.ascontiguousarray(PX.vectors.T),
        Q.comp, Q.join, _bot(Q, Y.types, PX.types))
    return _functor_from_rows(PX, PY, np.ascontiguousarray(mat.T),
                              PX.types, f"({f.name})!")


def f_upper(f: QFunctor, cap: int | None = None) -> QFunctor:
    """f^!: PY -> PX, tau |-> tau . graph(f); right adjoint of f_!."""
    X, Y = f.source, f.target
    PX, PY = P(X, cap), P(Y, cap)
    Q = X.Q
    gr = Y.hom[f.table[:, None], np.arange(Y.n)[None, :]]
    mat = _kernels.rel_compose(
        np.ascontiguousarray(gr), np.ascontiguousarray(PY.vectors.T),
        Q.comp, Q.join, _bot(Q, X.types, PY.types))
    out = _functor_from_rows(PY, PX, np.ascontiguousarray(mat.T),
                             PY.types, f"({f.name})^!")
    _assert_adjoint(f_lower(f, cap), out, "f_lower -| f_upper")
    return out


def f_dag_lower(f: QFunctor, cap: int | None = None) -> QFunctor:
    """f_+: PdX -> PdY, tau |-> graph(f) . tau."""
    X, Y = f.source, f.target
    PdX, PdY = Pd(X, cap), Pd(Y, cap)
    Q = X.Q
    gr = Y.hom[f.table[:, None], np.arange(Y.n)[None, :]]
    mat = _kernels.rel_compose(
        PdX.vectors, np.ascontiguousarray(gr), Q.comp, Q.join,
        _bot(Q, PdX.types, Y.types))
    return _functor_from_rows(PdX, PdY, mat, PdX.types, f"({f.name})+")


def f_dag_upper(f: QFunctor, cap: int | None = None) -> QFunctor:
    """f^+: PdY -> PdX, tau |-> cograph(f) . tau; left adjoint of f_+."""
    X, Y = f.source, f.target
    PdX, PdY = Pd(X, cap), Pd(Y, cap)
    Q = X.Q
    cog = Y.hom[np.arange(Y.n)[:, None], f.table[None, :]]
    mat = _kernels.rel_compose(
        PdY.vectors, np.ascontiguousarray(cog), Q.comp, Q.join,
        _bot(Q, PdY.types, X.types))
    out = _functor_from_rows(PdY, PdX, mat, PdY.types, f"({f.name})^+")
    _assert_adjoint(out, f_dag_lower(f, cap), "f_dag_upper -| f_dag_lower")
    return out


# ---------------------------------------------------------------------------
# Kan and Isbell adjunctions induced by a distributor phi: X -|-> Y
# ---------------------------------------------------------------------------

def kan_upper_star(phi: QDistributor, cap: int | None = None) -> QFunctor:
    """phi^*: PY -> PX, tau |-> tau . phi (a left adjoint)."""
    X, Y = phi.source, phi.target
    PX, PY = P(X, cap), P(Y, cap)
    Q = X.Q
    mat = _kernels.rel_compose(
        phi.mat, np.ascontiguousarray(PY.vectors.T), Q.comp, Q.join,
        _bot(Q, X.types, PY.types))
    return _functor_from_rows(PY, PX, np.ascontiguousarray(mat.T),
                              PY.types, f"kan^[{phi.name}]")


def kan_lower_star(phi: QDistributor, cap: int | None = None) -> QFunctor:
    """phi_*: PX -> PY, sigma |-> sigma / phi (right adjoint of phi^*)."""
    X, Y = phi.source, phi.target
    PX, PY = P(X, cap), P(Y, cap)
    Q = X.Q
    mat = _kernels.rel_lda(
        np.ascontiguousarray(PX.vectors.T), phi.mat, Q.lda, Q.meet,
        _top(Q, Y.types, PX.types))
    out = _functor_from_rows(PX, PY, np.ascontiguousarray(mat.T),
                             PX.types, f"kan_[{phi.name}]")
    _assert_adjoint(kan_upper_star(phi, cap), out, "kan adjunction")
    return out


def kan_lower_dag(phi: QDistributor, cap: int | None = None) -> QFunctor:
    """phi_+: PdY -> PdX, tau |-> phi \\ tau (left adjoint of phi^+)."""
    X, Y = phi.source, phi.target
    PdX, PdY = Pd(X, cap), Pd(Y, cap)
    Q = X.Q
    mat = _kernels.rel_rda(
        phi.mat, PdY.vectors, Q.rda, Q.meet, _top(Q, PdY.types, X.types))
    return _functor_from_rows(PdY, PdX, mat, PdY.types, f"kan+[{phi.name}]")


def kan_upper_dag(phi: QDistributor, cap: int | None = None) -> QFunctor:
    """phi^+: PdX -> PdY, sigma |-> phi . sigma (right adjoint of phi_+)."""
    X, Y = phi.source, phi.target
    PdX, PdY = Pd(X, cap), Pd(Y, cap)
    Q = X.Q
    mat = _kernels.rel_compose(
        PdX.vectors, phi.mat, Q.comp, Q.join, _bot(Q, PdX.types, Y.types))
    out = _functor_from_rows(PdX, PdY, mat, PdX.types, f"kan^+[{phi.name}]")
    _assert_adjoint(kan_lower_dag(phi, cap), out, "dual kan adjunction")
    return out


def kan(phi: QDistributor, cap: int | None = None):
    """All four Kan functors of phi, adjunctions asserted."""
    return (kan_upper_star(phi, cap), kan_lower_star(phi, cap),
            kan_lower_dag(phi, cap), kan_upper_dag(phi, cap))


def isbell_up(phi: QDistributor, cap: int | None = None) -> QFunctor:
    """PX -> PdY, sigma |-> phi / sigma."""
    X, Y = phi.source, phi.target
    PX, PdY = P(X, cap), Pd(Y, cap)
    Q = X.Q
    mat = _kernels.rel_lda(
        phi.mat, np.ascontiguousarray(PX.vectors.T), Q.lda, Q.meet,
        _top(Q, PX.types, Y.types))
    return _functor_from_rows(PX, PdY, mat, PX.types, f"up[{phi.name}]")


def isbell_down(phi: QDistributor, cap: int | None = None) -> QFunctor:
    """PdY -> PX, tau |-> tau \\ phi; right adjoint of isbell_up."""
    X, Y = phi.source, phi.target
    PX, PdY = P(X, cap), Pd(Y, cap)
    Q = X.Q
    mat = _kernels.rel_rda(
        PdY.vectors, phi.mat, Q.rda, Q.meet, _top(Q, X.types, PdY.types))
    out = _functor_from_rows(PdY, PX, np.ascontiguousarray(mat.T),
                             PdY.types, f"down[{phi.name}]")
    _assert_adjoint(isbell_up(phi, cap), out, "isbell adjunction")
    return out


def isbell(phi: QDistributor, cap: int | None = None):
    return isbell_up(phi, cap), isbell_down(phi, cap)


# ---------------------------------------------------------------------------
# transposes
# ---------------------------------------------------------------------------

def transpose_to_P(phi: QDistributor, cap: int | None = None) -> QFunctor:
    """Y -> PX, y |-> phi(-, y)."""
    PX = P(phi.source, cap)
    return _functor_from_rows(phi.target, PX,
                              np.ascontiguousarray(phi.mat.T),
                              phi.target.types, f"tr[{phi.name}]")


def transpose_to_Pd(phi: QDistributor, cap: int | None = None) -> QFunctor:
    """X -> PdY, x |-> phi(x, -)."""
    PdY = Pd(phi.target, cap)
    return _functor_from_rows(phi.source, PdY, phi.mat,
                              phi.source.types, f"trd[{phi.name}]")


def untranspose_P(g: QFunctor) -> QDistributor:
    """Inverse of transpose_to_P for g: Y -> PX."""
    PX = g.target
    if not isinstance(PX, PresheafCategory) or PX.kind != "P":
        raise SignatureMismatch("untranspose_P needs a functor into some P(X)")
    mat = np.ascontiguousarray(PX.vectors[g.table].T)
    return QDistributor(PX.base_X, g.source, mat, validated=True,
                        name=f"untr[{g.name}]")


def untranspose_Pd(g: QFunctor) -> QDistributor:
    """Inverse of transpose_to_Pd for g: X -> PdY."""
    PdY = g.target
    if not isinstance(PdY, PresheafCategory) or PdY.kind != "Pd":
        raise SignatureMismatch("untranspose_Pd needs a functor into some Pd(Y)")
    mat = PdY.vectors[g.table]
    return QDistributor(g.source, PdY.base_X, mat, validated=True,
                        name=f"untrd[{g.name}]")
