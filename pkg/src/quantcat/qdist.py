"""Relations and distributors between enriched categories.

A relation and a distributor share one type; `validated` records whether
the compatibility condition  b . phi . a <= phi  has been established.
Composition and residuals are computed identically for both.
"""

from __future__ import annotations

import numpy as np

from . import _kernels
from .config import VERIFY
from .errors import EmptyFamily, SignatureMismatch, TypeNotPreserved
from .qcat import QCategory, QFunctor


class QDistributor:
    def __init__(self, source: QCategory, target: QCategory, mat,
                 validated: bool = False, name: str = ""):
        self.source = source
        self.target = target
        self.mat = np.asarray(mat, dtype=np.int32)
        self.validated = validated
        self.name = name
        if self.mat.shape != (source.n, target.n):
            raise SignatureMismatch(
                f"matrix must be {source.n}x{target.n}, got {self.mat.shape}")
        if source.n and target.n:
            Q = source.Q
            pairs = Q.elem_pair[self.mat]
            bad = (pairs[:, :, 0] != source.types[:, None]) | \
                  (pairs[:, :, 1] != target.types[None, :])
            if bad.any():
                i, j = map(int, np.argwhere(bad)[0])
                raise TypeNotPreserved(
                    f"entry ({source.ids[i]},{target.ids[j]}) has the wrong type",
                    {"x": source.ids[i], "y": target.ids[j]})

    @property
    def Q(self):
        return self.source.Q

    @property
    def fingerprint(self) -> str:
        import hashlib
        h = hashlib.sha1()
        h.update(self.source.fingerprint.encode())
        h.update(self.target.fingerprint.encode())
        h.update(self.mat.tobytes())
        return h.hexdigest()[:16]

    def same_signature(self, other: QDistributor) -> bool:
        return (self.source.same_as(other.source)
                and self.target.same_as(other.target))

    def __repr__(self):
        return (f"QDistributor({self.name or '?'}: {self.source.name} -|-> "
                f"{self.target.name})")


def identity_dist(X: QCategory) -> QDistributor:
    return QDistributor(X, X, X.hom, validated=True, name=f"1*[{X.name}]")


def bottom_dist(X: QCategory, Y: QCategory) -> QDistributor:
    return QDistributor(X, Y, X.bot_against(Y), validated=True, name="bot")


def top_dist(X: QCategory, Y: QCategory) -> QDistributor:
    return QDistributor(X, Y, X.top_against(Y), validated=True, name="top")


def compose(phi: QDistributor, psi: QDistributor) -> QDistributor:
    """psi . phi for phi: X -|-> Y, psi: Y -|-> Z (diagrammatic arguments)."""
    if not phi.target.same_as(psi.source):
        raise SignatureMismatch(
            f"middle categories differ: {phi.target.name} vs {psi.source.name}")
    Q = phi.Q
    mat = _kernels.rel_compose(phi.mat, psi.mat, Q.comp, Q.join,
                               phi.source.bot_against(psi.target))
    out = QDistributor(phi.source, psi.target, mat,
                       validated=phi.validated and psi.validated,
                       name=f"{psi.name}.{phi.name}")
    if VERIFY and out.validated:
        ok, wit = check_distributor(out)
        assert ok, f"composite of distributors failed compatibility: {wit}"
    return out


def dist_residual_left(theta: QDistributor, phi: QDistributor) -> QDistributor:
    """theta / phi: Y -|-> Z for theta: X -|-> Z, phi: X -|-> Y."""
    if not theta.source.same_as(phi.source):
        raise SignatureMismatch("left residual needs a common source")
    Q = theta.Q
    mat = _kernels.rel_lda(theta.mat, phi.mat, Q.lda, Q.meet,
                           phi.target.top_against(theta.target))
    return QDistributor(phi.target, theta.target, mat,
                        validated=theta.validated and phi.validated,
                        name=f"({theta.name}/{phi.name})")


def dist_residual_right(psi: QDistributor, theta: QDistributor) -> QDistributor:
    """psi \\ theta: X -|-> Y for psi: Y -|-> Z, theta: X -|-> Z."""
    if not psi.target.same_as(theta.target):
        raise SignatureMismatch("right residual needs a common target")
    Q = psi.Q
    mat = _kernels.rel_rda(psi.mat, theta.mat, Q.rda, Q.meet,
                           theta.source.top_against(psi.source))
    return QDistributor(theta.source, psi.source, mat,
                        validated=psi.validated and theta.validated,
                        name=f"({psi.name}\\{theta.name})")


def check_distributor(phi: QDistributor):
    """(compatible, witness): is  b . phi . a  below phi entrywise?"""
    left = compose(QDistributor(phi.source, phi.source, phi.source.hom),
                   QDistributor(phi.source, phi.target, phi.mat))
    both = compose(left,
                   QDistributor(phi.target, phi.target, phi.target.hom))
    ok = phi.Q.leq[both.mat, phi.mat].astype(bool)
    if phi.source.n == 0 or phi.target.n == 0 or ok.all():
        return True, None
    i, j = map(int, np.argwhere(~ok)[0])
    return False, {"x": phi.source.ids[i], "y": phi.target.ids[j],
                   "closed": phi.Q.elem_name(int(both.mat[i, j])),
                   "value": phi.Q.elem_name(int(phi.mat[i, j]))}


def validate_dist(phi: QDistributor) -> QDistributor:
    ok, wit = check_distributor(phi)
    if not ok:
        raise TypeNotPreserved(f"{phi.name or 'phi'} is not a distributor", wit)
    phi.validated = True
    return phi


def graph(f: QFunctor) -> QDistributor:
    """f_*: X -|-> Y with entries hom(fx, y)."""
    b = f.target.hom
    mat = b[f.table[:, None], np.arange(f.target.n)[None, :]]
    return QDistributor(f.source, f.target, mat, validated=True,
                        name=f"({f.name})*")


def cograph(f: QFunctor) -> QDistributor:
    """f^*: Y -|-> X with entries hom(y, fx)."""
    b = f.target.hom
    mat = b[np.arange(f.target.n)[:, None], f.table[None, :]]
    return QDistributor(f.target, f.source, mat, validated=True,
                        name=f"({f.name})^")


def dist_leq(phi: QDistributor, psi: QDistributor) -> bool:
    if not phi.same_signature(psi):
        raise SignatureMismatch("order compares equal signatures only")
    return bool(phi.Q.leq[phi.mat, psi.mat].all())


def dist_eq(phi: QDistributor, psi: QDistributor) -> bool:
    if not phi.same_signature(psi):
        raise SignatureMismatch("equality compares equal signatures only")
    return bool(np.array_equal(phi.mat, psi.mat))


def dist_leq_witness(phi: QDistributor, psi: QDistributor):
    if not phi.same_signature(psi):
        raise SignatureMismatch("order compares equal signatures only")
    ok = phi.Q.leq[phi.mat, psi.mat].astype(bool)
    if phi.source.n == 0 or phi.target.n == 0 or ok.all():
        return True, None
    i, j = map(int, np.argwhere(~ok)[0])
    return False, {"x": phi.source.ids[i], "y": phi.target.ids[j],
                   "lhs": phi.Q.elem_name(int(phi.mat[i, j])),
                   "rhs": phi.Q.elem_name(int(psi.mat[i, j]))}


def _family_signature(dists, source, target):
    if dists:
        src, tgt = dists[0].source, dists[0].target
        for d in dists[1:]:
            if not d.same_signature(dists[0]):
                raise SignatureMismatch("family members differ in signature")
        return src, tgt
    if source is None or target is None:
        raise EmptyFamily("empty family needs a declared signature")
    return source, target


def dist_meet(dists, source: QCategory | None = None,
              target: QCategory | None = None) -> QDistributor:
    """Pointwise meet; a meet of validated distributors stays validated."""
    src, tgt = _family_signature(list(dists), source, target)
    Q = src.Q
    mat = src.top_against(tgt)
    validated = True
    for d in dists:
        mat = Q.meet[mat, d.mat]
        validated = validated and d.validated
    out = QDistributor(src, tgt, mat, validated=validated, name="meet")
    if VERIFY and validated:
        ok, wit = check_distributor(out)
        assert ok, f"meet of distributors failed compatibility: {wit}"
    return out


def dist_join(dists, source: QCategory | None = None,
              target: QCategory | None = None) -> QDistributor:
    """Pointwise join; compatibility is re-checked, not assumed."""
    src, tgt = _family_signature(list(dists), source, target)
    Q = src.Q
    mat = src.bot_against(tgt)
    for d in dists:
        mat = Q.join[mat, d.mat]
    out = QDistributor(src, tgt, mat, validated=False, name="join")
    ok, _ = check_distributor(out)
    out.validated = ok
    return out
