"""Finite quantaloids: hom lattices, composition, units, residuals, catalog.

A quantaloid is stored flat: every hom-lattice element gets a dense global
id (int32), and composition/join/meet/leq/residual tables are global
(E x E) arrays with -1 where the types do not line up.  Residuals are
computed by brute-force maximum over their defining set, never by formula,
so they can serve as oracles for every adjunction built on top of them.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import (
    NotALattice,
    NotAssociative,
    NotUnital,
    NotSupPreserving,
    TypeMismatch,
    UnknownCatalogEntry,
)


@dataclass(frozen=True)
class Lattice:
    """One hom-set: a finite complete lattice given extensionally.

    `leq` is the reflexive-transitive closure of the input pairs; `join`
    and `meet` are derived tables, so inconsistent user input is caught at
    validation rather than propagated.
    """

    elements: tuple[str, ...]
    leq: np.ndarray          # (m, m) uint8
    join: np.ndarray         # (m, m) int32
    meet: np.ndarray         # (m, m) int32
    bottom: int
    top: int

    @property
    def size(self) -> int:
        return len(self.elements)

    def index(self, name: str) -> int:
        return self.elements.index(name)

    def join_of(self, idxs) -> int:
        acc = self.bottom
        for i in idxs:
            acc = int(self.join[acc, i])
        return acc

    def meet_of(self, idxs) -> int:
        acc = self.top
        for i in idxs:
            acc = int(self.meet[acc, i])
        return acc


def build_lattice(elements, leq_pairs, context: str = "") -> Lattice:
    """Validate and complete a lattice description.

    Raises NotALattice with a witness naming the first failing pair.
    """
    elements = tuple(str(e) for e in elements)
    m = len(elements)
    if m == 0:
        raise NotALattice(f"{context}: empty hom-set is not a complete lattice")
    if len(set(elements)) != m:
        raise NotALattice(f"{context}: duplicate element names", {"elements": elements})
    idx = {e: i for i, e in enumerate(elements)}
    leq = np.eye(m, dtype=np.uint8)
    for a, b in leq_pairs:
        if str(a) not in idx or str(b) not in idx:
            raise NotALattice(f"{context}: leq pair ({a},{b}) uses unknown element",
                              {"pair": (str(a), str(b))})
        leq[idx[str(a)], idx[str(b)]] = 1
    # transitive closure
    changed = True
    while changed:
        step = ((leq @ leq) > 0).astype(np.uint8)
        changed = bool((step & ~leq).any())
        leq |= step
    for a in range(m):
        for b in range(a + 1, m):
            if leq[a, b] and leq[b, a]:
                raise NotALattice(
                    f"{context}: antisymmetry fails between "
                    f"{elements[a]} and {elements[b]}",
                    {"a": elements[a], "b": elements[b]})

    join = np.full((m, m), -1, dtype=np.int32)
    meet = np.full((m, m), -1, dtype=np.int32)
    for a in range(m):
        for b in range(m):
            ub = [c for c in range(m) if leq[a, c] and leq[b, c]]
            lub = [c for c in ub if all(leq[c, d] for d in ub)]
            if len(lub) != 1:
                raise NotALattice(
                    f"{context}: no least upper bound for "
                    f"({elements[a]},{elements[b]})",
                    {"a": elements[a], "b": elements[b]})
            join[a, b] = lub[0]
            lb = [c for c in range(m) if leq[c, a] and leq[c, b]]
            glb = [c for c in lb if all(leq[d, c] for d in lb)]
            if len(glb) != 1:
                raise NotALattice(
                    f"{context}: no greatest lower bound for "
                    f"({elements[a]},{elements[b]})",
                    {"a": elements[a], "b": elements[b]})
            meet[a, b] = glb[0]
    bots = [c for c in range(m) if all(leq[c, d] for d in range(m))]
    tops = [c for c in range(m) if all(leq[d, c] for d in range(m))]
    if len(bots) != 1 or len(tops) != 1:
        raise NotALattice(f"{context}: missing global bottom or top")
    return Lattice(elements, leq, join, meet, bots[0], tops[0])


@dataclass
class Quantaloid:
    """Validated finite quantaloid with flat global element tables."""

    name: str
    objects: tuple[str, ...]
    homs: dict                    # (r, s) object-index pair -> Lattice
    elem_pair: np.ndarray         # (E, 2) int32: [source, target] object of each id
    elem_local: tuple[str, ...]   # local name of each global id
    hom_ids: dict                 # (r, s) -> int32 array of global ids (ascending)
    leq: np.ndarray               # (E, E) uint8
    join: np.ndarray              # (E, E) int32, -1 across hom-pairs
    meet: np.ndarray
    comp: np.ndarray              # comp[v, u] = v after u, -1 if not composable
    lda: np.ndarray               # lda[w, u] = w / u (largest v with v.u <= w)
    rda: np.ndarray               # rda[v, w] = v \\ w (largest u with v.u <= w)
    unit: np.ndarray              # (n_obj,) int32
    bot: np.ndarray               # (n_obj, n_obj) int32
    top: np.ndarray
    fingerprint: str = field(default="")

    @property
    def n_objects(self) -> int:
        return len(self.objects)

    @property
    def n_elements(self) -> int:
        return len(self.elem_local)

    def obj_index(self, name: str) -> int:
        return self.objects.index(name)

    def elem_name(self, gid: int) -> str:
        if self.n_objects == 1:
            return self.elem_local[gid]
        r, s = self.elem_pair[gid]
        return f"{self.objects[r]}->{self.objects[s]}:{self.elem_local[gid]}"

    def elem_id(self, r: int, s: int, local: str) -> int:
        lat = self.homs[(r, s)]
        return int(self.hom_ids[(r, s)][lat.index(local)])

    def leq_elems(self, a: int, b: int) -> bool:
        return bool(self.leq[a, b])


def _pair_key(key: str, n_parts: int, what: str):
    parts = key.split("->")
    if len(parts) != n_parts:
        raise TypeMismatch(f"malformed {what} key {key!r}")
    return parts


def validate_quantaloid(spec: dict, name: str = "quantaloid") -> Quantaloid:
    """Validate raw tables into a Quantaloid.

    spec = {"objects": [...],
            "homs": {"r->s": {"elements": [...], "leq": [[a, b], ...]}},
            "compose": {"r->s->t": [[v, u, result], ...]},
            "units": {"r": element}}

    The first failed axiom raises with a witness triple.
    """
    objects = tuple(str(o) for o in spec["objects"])
    n = len(objects)
    oidx = {o: i for i, o in enumerate(objects)}

    homs = {}
    for r in range(n):
        for s in range(n):
            key = f"{objects[r]}->{objects[s]}"
            if key not in spec["homs"]:
                raise NotALattice(f"hom-set {key} missing (empty hom-sets are disallowed)")
            h = spec["homs"][key]
            homs[(r, s)] = build_lattice(h["elements"], h.get("leq", []), key)

    # global ids, in object-pair then local order
    elem_pair = []
    elem_local = []
    hom_ids = {}
    for r in range(n):
        for s in range(n):
            lat = homs[(r, s)]
            base = len(elem_local)
            hom_ids[(r, s)] = np.arange(base, base + lat.size, dtype=np.int32)
            for e in lat.elements:
                elem_pair.append((r, s))
                elem_local.append(e)
    E = len(elem_local)
    elem_pair = np.array(elem_pair, dtype=np.int32).reshape(E, 2)

    leq = np.zeros((E, E), dtype=np.uint8)
    join = np.full((E, E), -1, dtype=np.int32)
    meet = np.full((E, E), -1, dtype=np.int32)
    bot = np.full((n, n), -1, dtype=np.int32)
    top = np.full((n, n), -1, dtype=np.int32)
    for (r, s), lat in homs.items():
        ids = hom_ids[(r, s)]
        leq[np.ix_(ids, ids)] = lat.leq
        join[np.ix_(ids, ids)] = ids[lat.join]
        meet[np.ix_(ids, ids)] = ids[lat.meet]
        bot[r, s] = ids[lat.bottom]
        top[r, s] = ids[lat.top]

    comp = np.full((E, E), -1, dtype=np.int32)
    for key, table in spec["compose"].items():
        r, s, t = _pair_key(key, 3, "compose")
        for o in (r, s, t):
            if o not in oidx:
                raise TypeMismatch(f"compose key {key!r} uses unknown object {o!r}")
        ri, si, ti = oidx[r], oidx[s], oidx[t]
        for v, u, res in table:
            vg = _lookup(homs, hom_ids, si, ti, v, key)
            ug = _lookup(homs, hom_ids, ri, si, u, key)
            rg = _lookup(homs, hom_ids, ri, ti, res, key)
            comp[vg, ug] = rg
    # totality
    for r in range(n):
        for s in range(n):
            for t in range(n):
                for v in hom_ids[(s, t)]:
                    for u in hom_ids[(r, s)]:
                        if comp[v, u] < 0:
                            raise NotAssociative(
                                "composition table incomplete",
                                {"v": elem_local[v], "u": elem_local[u]})

    units = np.full(n, -1, dtype=np.int32)
    for o, e in spec["units"].items():
        if o not in oidx:
            raise TypeMismatch(f"unit declared for unknown object {o!r}")
        units[oidx[o]] = _lookup(homs, hom_ids, oidx[o], oidx[o], e, "unit")
    if (units < 0).any():
        missing = objects[int(np.argmin(units))]
        raise NotUnital(f"no unit declared for object {missing!r}")

    Q = Quantaloid(name, objects, homs, elem_pair, tuple(elem_local), hom_ids,
                   leq, join, meet, comp, join.copy(), join.copy(), units,
                   bot, top)

    _check_unital(Q)
    _check_associative(Q)
    _check_sup_preserving(Q)
    _fill_residuals(Q)
    Q.fingerprint = _fingerprint(spec, name)
    return Q


def _lookup(homs, hom_ids, r, s, local, context):
    lat = homs[(r, s)]
    try:
        return int(hom_ids[(r, s)][lat.index(str(local))])
    except ValueError:
        raise TypeMismatch(
            f"{context}: element {local!r} not in hom-set", {"element": str(local)})


def _composable_triples(Q):
    n = Q.n_objects
    for r in range(n):
        for s in range(n):
            for t in range(n):
                yield r, s, t


def _check_unital(Q):
    for r, s, _ in _composable_triples(Q):
        for u in Q.hom_ids[(r, s)]:
            lhs = Q.comp[Q.unit[s], u]
            if lhs != u:
                raise NotUnital(
                    f"unit law fails: 1.{Q.elem_name(u)} = {Q.elem_name(lhs)}",
                    {"u": Q.elem_name(u), "got": Q.elem_name(lhs)})
            rhs = Q.comp[u, Q.unit[r]]
            if rhs != u:
                raise NotUnital(
                    f"unit law fails: {Q.elem_name(u)}.1 = {Q.elem_name(rhs)}",
                    {"u": Q.elem_name(u), "got": Q.elem_name(rhs)})


def _check_associative(Q):
    for r, s, t in _composable_triples(Q):
        for q in range(Q.n_objects):
            for u in Q.hom_ids[(r, s)]:
                for v in Q.hom_ids[(s, t)]:
                    vu = Q.comp[v, u]
                    for w in Q.hom_ids[(t, q)]:
                        lhs = Q.comp[w, vu]
                        rhs = Q.comp[Q.comp[w, v], u]
                        if lhs != rhs:
                            raise NotAssociative(
                                "associativity fails",
                                {"w": Q.elem_name(w), "v": Q.elem_name(v),
                                 "u": Q.elem_name(u),
                                 "lhs": Q.elem_name(lhs), "rhs": Q.elem_name(rhs)})


def _check_sup_preserving(Q):
    for r, s, t in _composable_triples(Q):
        us = Q.hom_ids[(r, s)]
        vs = Q.hom_ids[(s, t)]
        for v in vs:
            if Q.comp[v, Q.bot[r, s]] != Q.bot[r, t]:
                raise NotSupPreserving(
                    f"{Q.elem_name(v)} . bottom is not bottom",
                    {"v": Q.elem_name(v)})
            for u1 in us:
                for u2 in us:
                    lhs = Q.comp[v, Q.join[u1, u2]]
                    rhs = Q.join[Q.comp[v, u1], Q.comp[v, u2]]
                    if lhs != rhs:
                        raise NotSupPreserving(
                            "composition does not preserve joins on the right",
                            {"v": Q.elem_name(v), "u1": Q.elem_name(u1),
                             "u2": Q.elem_name(u2)})
        for u in us:
            if Q.comp[Q.bot[s, t], u] != Q.bot[r, t]:
                raise NotSupPreserving(
                    f"bottom . {Q.elem_name(u)} is not bottom",
                    {"u": Q.elem_name(u)})
            for v1 in vs:
                for v2 in vs:
                    lhs = Q.comp[Q.join[v1, v2], u]
                    rhs = Q.join[Q.comp[v1, u], Q.comp[v2, u]]
                    if lhs != rhs:
                        raise NotSupPreserving(
                            "composition does not preserve joins on the left",
                            {"u": Q.elem_name(u), "v1": Q.elem_name(v1),
                             "v2": Q.elem_name(v2)})


def _fill_residuals(Q):
    E = Q.n_elements
    Q.lda = np.full((E, E), -1, dtype=np.int32)
    Q.rda = np.full((E, E), -1, dtype=np.int32)
    for r, s, t in _composable_triples(Q):
        for u in Q.hom_ids[(r, s)]:          # u : r -> s
            for w in Q.hom_ids[(r, t)]:      # w : r -> t
                g = Q.bot[s, t]
                for v in Q.hom_ids[(s, t)]:
                    if Q.leq[Q.comp[v, u], w]:
                        g = Q.join[g, v]
                assert Q.leq[Q.comp[g, u], w], "residual join left the defining set"
                Q.lda[w, u] = g
        for v in Q.hom_ids[(s, t)]:          # v : s -> t
            for w in Q.hom_ids[(r, t)]:
                g = Q.bot[r, s]
                for u in Q.hom_ids[(r, s)]:
                    if Q.leq[Q.comp[v, u], w]:
                        g = Q.join[g, u]
                assert Q.leq[Q.comp[v, g], w], "residual join left the defining set"
                Q.rda[v, w] = g


def _fingerprint(spec, name) -> str:
    blob = json.dumps({"name": name, "spec": spec}, sort_keys=True, default=str)
    return hashlib.sha1(blob.encode()).hexdigest()[:16]


def residual_left(Q: Quantaloid, w: int, u: int) -> int:
    """w / u: the largest v with v.u <= w."""
    if Q.elem_pair[w, 0] != Q.elem_pair[u, 0]:
        raise TypeMismatch("left residual needs a common source object",
                           {"w": Q.elem_name(w), "u": Q.elem_name(u)})
    return int(Q.lda[w, u])


def residual_right(Q: Quantaloid, v: int, w: int) -> int:
    """v \\ w: the largest u with v.u <= w."""
    if Q.elem_pair[v, 1] != Q.elem_pair[w, 1]:
        raise TypeMismatch("right residual needs a common target object",
                           {"v": Q.elem_name(v), "w": Q.elem_name(w)})
    return int(Q.rda[v, w])


# ---------------------------------------------------------------------------
# catalog
# ---------------------------------------------------------------------------

def _quantale_spec(elements, leq_pairs, times, unit):
    table = [[v, u, times(v, u)] for v in elements for u in elements]
    return {
        "objects": ["*"],
        "homs": {"*->*": {"elements": [str(e) for e in elements],
                          "leq": [[str(a), str(b)] for a, b in leq_pairs]}},
        "compose": {"*->*->*": [[str(v), str(u), str(r)] for v, u, r in table]},
        "units": {"*": str(unit)},
    }


def _chain_values(n):
    if n < 1:
        raise UnknownCatalogEntry(f"chain needs at least 1 element, got {n}")
    if n == 1:
        return [Fraction(0)]
    return [Fraction(k, n - 1) for k in range(n)]


def catalog(name: str, *args, **kwargs) -> Quantaloid:
    """Built-in quantaloids.

    boolean2; chain_min(n); lukasiewicz(n); product(Q1, Q2) of one-object
    entries; free_table(spec).
    """
    if name == "boolean2":
        spec = _quantale_spec(
            [0, 1], [(0, 1)], lambda v, u: min(int(v), int(u)), 1)
        return validate_quantaloid(spec, "boolean2")
    if name == "chain_min":
        n = int(args[0] if args else kwargs["n"])
        vals = _chain_values(n)
        spec = _quantale_spec(
            vals, [(vals[i], vals[i + 1]) for i in range(len(vals) - 1)],
            lambda v, u: min(Fraction(v), Fraction(u)), vals[-1])
        return validate_quantaloid(spec, f"chain{n}")
    if name == "lukasiewicz":
        n = int(args[0] if args else kwargs["n"])
        vals = _chain_values(n)
        spec = _quantale_spec(
            vals, [(vals[i], vals[i + 1]) for i in range(len(vals) - 1)],
            lambda v, u: max(Fraction(0), Fraction(v) + Fraction(u) - 1),
            vals[-1])
        return validate_quantaloid(spec, f"luk{n}")
    if name == "product":
        q1, q2 = args if args else (kwargs["q1"], kwargs["q2"])
        if isinstance(q1, str):
            q1 = catalog(q1)
        if isinstance(q2, str):
            q2 = catalog(q2)
        if q1.n_objects != 1 or q2.n_objects != 1:
            raise UnknownCatalogEntry("product is defined for one-object entries")
        l1, l2 = q1.homs[(0, 0)], q2.homs[(0, 0)]
        elems = [f"({a},{b})" for a in l1.elements for b in l2.elements]

        def pidx(a, b):
            return f"({l1.elements[a]},{l2.elements[b]})"

        pairs = []
        for a1 in range(l1.size):
            for b1 in range(l2.size):
                for a2 in range(l1.size):
                    for b2 in range(l2.size):
                        if l1.leq[a1, a2] and l2.leq[b1, b2]:
                            pairs.append((pidx(a1, b1), pidx(a2, b2)))
        table = []
        for a1 in range(l1.size):
            for b1 in range(l2.size):
                for a2 in range(l1.size):
                    for b2 in range(l2.size):
                        va = int(q1.comp[a1, a2])
                        vb = int(q2.comp[b1, b2])
                        table.append([pidx(a1, b1), pidx(a2, b2), pidx(va, vb)])
        spec = {
            "objects": ["*"],
            "homs": {"*->*": {"elements": elems, "leq": pairs}},
            "compose": {"*->*->*": table},
            "units": {"*": pidx(int(q1.unit[0]), int(q2.unit[0]))},
        }
        return validate_quantaloid(spec, f"product({q1.name},{q2.name})")
    if name == "free_table":
        spec = args[0] if args else kwargs["spec"]
        return validate_quantaloid(spec, kwargs.get("label", "free"))
    raise UnknownCatalogEntry(f"unknown catalog entry {name!r}")


def catalog_names() -> list[str]:
    return ["boolean2", "chain_min", "lukasiewicz", "product", "free_table"]
