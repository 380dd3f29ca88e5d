"""Categories and functors enriched in a finite quantaloid.

A category is a typed carrier plus an (n x n) int32 matrix of hom-element
ids; a functor is an index table into the target carrier.  Hom matrices of
derived carriers (presheaf categories) are computed lazily.
"""

from __future__ import annotations

import hashlib

import numpy as np

from . import _kernels
from .config import VERIFY, VERIFY_SIZE_LIMIT
from .errors import (
    NotReflexive,
    NotTransitive,
    SignatureMismatch,
    TypeNotPreserved,
)
from .quantaloid import Quantaloid


class TypedSet:
    """Finite carrier with a type map into the quantaloid's objects."""

    def __init__(self, ids, types):
        self.ids = tuple(str(i) for i in ids)
        self.types = np.asarray(types, dtype=np.int32)
        if len(self.ids) != len(set(self.ids)):
            raise SignatureMismatch("carrier ids must be unique")
        if self.types.shape != (len(self.ids),):
            raise SignatureMismatch("type map must cover the carrier")

    def __len__(self):
        return len(self.ids)


class QCategory:
    """Carrier + hom matrix satisfying reflexivity and transitivity."""

    def __init__(self, Q: Quantaloid, base: TypedSet, hom: np.ndarray | None,
                 name: str = ""):
        self.Q = Q
        self.base = base
        self._hom = None if hom is None else np.asarray(hom, dtype=np.int32)
        self.name = name or "X"
        self._fingerprint = None

    @property
    def n(self) -> int:
        return len(self.base)

    @property
    def ids(self):
        return self.base.ids

    @property
    def types(self) -> np.ndarray:
        return self.base.types

    @property
    def hom(self) -> np.ndarray:
        if self._hom is None:
            self._hom = self._compute_hom()
        return self._hom

    def _compute_hom(self) -> np.ndarray:
        raise NotReflexive(f"category {self.name} has no hom matrix")

    @property
    def fingerprint(self) -> str:
        if self._fingerprint is None:
            h = hashlib.sha1()
            h.update(self.Q.fingerprint.encode())
            h.update("\x00".join(self.ids).encode())
            h.update(self.types.tobytes())
            h.update(self.hom.astype(np.int32).tobytes())
            self._fingerprint = h.hexdigest()[:16]
        return self._fingerprint

    def unit_vec(self) -> np.ndarray:
        return self.Q.unit[self.types]

    def bot_against(self, other: QCategory) -> np.ndarray:
        return self.Q.bot[self.types[:, None], other.types[None, :]]

    def top_against(self, other: QCategory) -> np.ndarray:
        return self.Q.top[self.types[:, None], other.types[None, :]]

    def same_as(self, other: QCategory) -> bool:
        return self is other or self.fingerprint == other.fingerprint

    def __repr__(self):
        return f"QCategory({self.name}, n={self.n}, Q={self.Q.name})"


def check_category(Q: Quantaloid, base: TypedSet, hom, name: str = "X",
                   max_transitivity_size: int | None = None) -> QCategory:
    """Validate the two monad axioms; raises with a witness element/triple."""
    hom = np.asarray(hom, dtype=np.int32)
    n = len(base)
    if hom.shape != (n, n):
        raise SignatureMismatch(f"hom matrix must be {n}x{n}")
    if n:
        pairs = Q.elem_pair[hom]
        bad = (pairs[:, :, 0] != base.types[:, None]) | \
              (pairs[:, :, 1] != base.types[None, :])
        if bad.any():
            i, j = map(int, np.argwhere(bad)[0])
            raise TypeNotPreserved(
                f"hom({base.ids[i]},{base.ids[j]}) has the wrong type",
                {"x": base.ids[i], "y": base.ids[j]})
    X = QCategory(Q, base, hom, name)
    diag = hom[np.arange(n), np.arange(n)]
    refl = Q.leq[X.unit_vec(), diag]
    if not refl.all():
        i = int(np.argmin(refl))
        raise NotReflexive(
            f"1 is not below hom({base.ids[i]},{base.ids[i]})",
            {"x": base.ids[i], "value": Q.elem_name(int(diag[i]))})
    limit = VERIFY_SIZE_LIMIT if max_transitivity_size is None \
        else max_transitivity_size
    if n <= limit:
        aa = _kernels.rel_compose(hom, hom, Q.comp, Q.join,
                                  X.bot_against(X))
        ok = Q.leq[aa, hom].astype(bool)
        if not ok.all():
            i, j = map(int, np.argwhere(~ok)[0])
            k = _transitivity_witness(Q, hom, i, j)
            raise NotTransitive(
                f"hom.hom is not below hom at ({base.ids[i]},{base.ids[j]})",
                {"x": base.ids[i], "via": base.ids[k], "y": base.ids[j]})
    return X


def _transitivity_witness(Q, hom, i, j):
    for k in range(hom.shape[0]):
        if not Q.leq[Q.comp[hom[k, j], hom[i, k]], hom[i, j]]:
            return k
    return i


def singleton(Q: Quantaloid, obj: int = 0, name: str | None = None) -> QCategory:
    base = TypedSet(["*"], [obj])
    hom = np.array([[Q.unit[obj]]], dtype=np.int32)
    return check_category(Q, base, hom, name or f"pt[{Q.objects[obj]}]")


class QFunctor:
    """Type-preserving carrier map between categories (as an index table)."""

    def __init__(self, source: QCategory, target: QCategory, table,
                 name: str = ""):
        self.source = source
        self.target = target
        self.table = np.asarray(table, dtype=np.int64)
        self.name = name
        if self.table.shape != (source.n,):
            raise SignatureMismatch("functor table must cover the source carrier")
        if source.n and not (source.types ==
                             target.types[self.table]).all():
            i = int(np.argmin(source.types == target.types[self.table]))
            raise TypeNotPreserved(
                f"{source.ids[i]} is sent across types",
                {"x": source.ids[i]})

    def __call__(self, i: int) -> int:
        return int(self.table[i])

    def then(self, g: QFunctor) -> QFunctor:
        if not self.target.same_as(g.source):
            raise SignatureMismatch(
                f"cannot compose {self.name or 'f'} with {g.name or 'g'}")
        return QFunctor(self.source, g.target, g.table[self.table],
                        f"{g.name}.{self.name}")

    def equals(self, other: QFunctor) -> bool:
        return (self.source.same_as(other.source)
                and self.target.same_as(other.target)
                and np.array_equal(self.table, other.table))

    @property
    def fingerprint(self) -> str:
        h = hashlib.sha1()
        h.update(self.source.fingerprint.encode())
        h.update(self.target.fingerprint.encode())
        h.update(self.table.astype(np.int64).tobytes())
        return h.hexdigest()[:16]

    def __repr__(self):
        return (f"QFunctor({self.name or '?'}: {self.source.name} -> "
                f"{self.target.name})")


def identity_functor(X: QCategory) -> QFunctor:
    return QFunctor(X, X, np.arange(X.n, dtype=np.int64), "id")


def check_functor(f: QFunctor):
    """(is_functor, witness_pair_or_None); types were checked at build time."""
    a, b = f.source.hom, f.target.hom
    if f.source.n == 0:
        return True, None
    img = b[f.table[:, None], f.table[None, :]]
    ok = f.source.Q.leq[a, img].astype(bool)
    if ok.all():
        return True, None
    i, j = map(int, np.argwhere(~ok)[0])
    return False, {"x": f.source.ids[i], "y": f.source.ids[j],
                   "hom": f.source.Q.elem_name(int(a[i, j])),
                   "image_hom": f.source.Q.elem_name(int(img[i, j]))}


def check_fully_faithful(f: QFunctor):
    a, b = f.source.hom, f.target.hom
    if f.source.n == 0:
        return True, None
    img = b[f.table[:, None], f.table[None, :]]
    eq = a == img
    if eq.all():
        return True, None
    i, j = map(int, np.argwhere(~eq)[0])
    return False, {"x": f.source.ids[i], "y": f.source.ids[j],
                   "hom": f.source.Q.elem_name(int(a[i, j])),
                   "image_hom": f.source.Q.elem_name(int(img[i, j]))}


def require_functor(f: QFunctor, context: str = "") -> QFunctor:
    if VERIFY:
        ok, wit = check_functor(f)
        if not ok:
            raise TypeNotPreserved(
                f"{context or f.name}: not a functor", wit)
    return f


def _same_signature(f: QFunctor, g: QFunctor):
    if not (f.source.same_as(g.source) and f.target.same_as(g.target)):
        raise SignatureMismatch("functors do not share a signature")


def functor_leq(f: QFunctor, g: QFunctor) -> bool:
    """f <= g pointwise: the unit is below hom(fx, gx) for every x."""
    _same_signature(f, g)
    if f.source.n == 0:
        return True
    b = f.target.hom
    vals = b[f.table, g.table]
    return bool(f.source.Q.leq[f.source.unit_vec(), vals].all())


def functor_leq_witness(f: QFunctor, g: QFunctor):
    _same_signature(f, g)
    if f.source.n == 0:
        return True, None
    b = f.target.hom
    vals = b[f.table, g.table]
    ok = f.source.Q.leq[f.source.unit_vec(), vals].astype(bool)
    if ok.all():
        return True, None
    i = int(np.argmin(ok))
    return False, {"x": f.source.ids[i],
                   "fx": f.target.ids[f(i)], "gx": f.target.ids[g(i)],
                   "hom": f.source.Q.elem_name(int(vals[i]))}


def functor_iso(f: QFunctor, g: QFunctor) -> bool:
    """Equality up to isomorphism of values (for non-separated targets)."""
    return functor_leq(f, g) and functor_leq(g, f)


def check_adjoint(f: QFunctor, g: QFunctor) -> bool:
    """f -| g, decided by graph(f) = cograph(g) entrywise."""
    if not (f.source.same_as(g.target) and f.target.same_as(g.source)):
        raise SignatureMismatch("adjunction needs f: X -> Y and g: Y -> X")
    a, b = f.source.hom, f.target.hom
    lhs = b[f.table[:, None], np.arange(f.target.n)[None, :]]
    rhs = a[np.arange(f.source.n)[:, None], g.table[None, :]]
    return bool(np.array_equal(lhs, rhs))


def left_adjoint(g: QFunctor) -> QFunctor | None:
    """Brute-force left adjoint of g: Y -> X, or None if there is none."""
    X, Y = g.target, g.source
    want = X.hom[np.arange(X.n)[:, None], g.table[None, :]]  # (nX, nY)
    table = np.zeros(X.n, dtype=np.int64)
    for x in range(X.n):
        rows = np.nonzero((Y.hom == want[x][None, :]).all(axis=1))[0]
        if rows.size == 0:
            return None
        table[x] = rows[0]
    return QFunctor(X, Y, table, f"ladj({g.name})")


def right_adjoint(f: QFunctor) -> QFunctor | None:
    """Brute-force right adjoint of f: X -> Y, or None."""
    X, Y = f.source, f.target
    want = Y.hom[f.table[:, None], np.arange(Y.n)[None, :]]  # (nX, nY)
    table = np.zeros(Y.n, dtype=np.int64)
    for y in range(Y.n):
        cols = np.nonzero((X.hom == want[:, y][:, None]).all(axis=0))[0]
        if cols.size == 0:
            return None
        table[y] = cols[0]
    return QFunctor(Y, X, table, f"radj({f.name})")


def underlying_order(X: QCategory) -> np.ndarray:
    """x <= x' iff same type and the unit is below hom(x, x')."""
    same = X.types[:, None] == X.types[None, :]
    return same & X.Q.leq[X.unit_vec()[:, None], X.hom].astype(bool)


def iso_classes(X: QCategory) -> list[list[int]]:
    order = underlying_order(X)
    iso = order & order.T
    seen = np.zeros(X.n, dtype=bool)
    classes = []
    for i in range(X.n):
        if not seen[i]:
            members = list(np.nonzero(iso[i])[0])
            for m in members:
                seen[m] = True
            classes.append(members)
    return classes


def is_separated(X: QCategory) -> bool:
    return all(len(c) == 1 for c in iso_classes(X))


def essentially_surjective(f: QFunctor) -> bool:
    order = underlying_order(f.target)
    iso = order & order.T
    hit = np.zeros(f.target.n, dtype=bool)
    for x in range(f.source.n):
        hit |= iso[f(x)]
    return bool(hit.all())


def enumerate_functors(X: QCategory, Y: QCategory, limit: int = 64):
    """All functors X -> Y, in lexicographic table order (small carriers)."""
    out = []
    if Y.n == 0:
        return [QFunctor(X, Y, np.zeros(0, dtype=np.int64))] if X.n == 0 else []
    stack = [np.zeros(0, dtype=np.int64)]
    while stack:
        t = stack.pop()
        if len(t) == X.n:
            f = QFunctor(X, Y, t)
            if check_functor(f)[0]:
                out.append(f)
                if len(out) >= limit:
                    break
            continue
        x = len(t)
        for y in range(Y.n - 1, -1, -1):
            if Y.types[y] == X.types[x]:
                stack.append(np.concatenate([t, [y]]).astype(np.int64))
    return out


def collage(phi) -> tuple[QCategory, QFunctor, QFunctor]:
    """Glue X and Y along a distributor phi: X -|-> Y.

    Carrier is the tagged disjoint union; hom from the X part to the Y part
    is phi, the opposite corner is bottom.  Returns (Z, u, v) with the two
    fully faithful injections.
    """
    X, Y = phi.source, phi.target
    Q = X.Q
    ids = [f"L:{i}" for i in X.ids] + [f"R:{j}" for j in Y.ids]
    types = np.concatenate([X.types, Y.types])
    n, m = X.n, Y.n
    hom = np.zeros((n + m, n + m), dtype=np.int32)
    hom[:n, :n] = X.hom
    hom[n:, n:] = Y.hom
    hom[:n, n:] = phi.mat
    hom[n:, :n] = Q.bot[Y.types[:, None], X.types[None, :]]
    Z = check_category(Q, TypedSet(ids, types), hom, f"collage({phi.name})")
    u = QFunctor(X, Z, np.arange(n, dtype=np.int64), "inl")
    v = QFunctor(Y, Z, np.arange(n, n + m, dtype=np.int64), "inr")
    if VERIFY:
        assert check_fully_faithful(u)[0] and check_fully_faithful(v)[0]
    return Z, u, v
