"""JSON file formats for quantaloids, categories, functors, distributors,
structure tables, and suite configurations."""

from __future__ import annotations

import json
import os

import numpy as np

from .config import DEFAULT_CAP
from .errors import QuantcatError, SignatureMismatch, TypeMismatch
from .qcat import QCategory, QFunctor, TypedSet, check_category
from .qdist import QDistributor
from .quantaloid import Quantaloid, catalog, validate_quantaloid


def _read(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def parse_quantaloid_ref(ref: str, base_dir: str = ".") -> Quantaloid:
    """A catalog name ('boolean2', 'chain_min:4', 'lukasiewicz:3',
    'product:boolean2:boolean2') or a path to a description file."""
    if ref == "boolean2":
        return catalog("boolean2")
    if ref.startswith("chain_min:"):
        return catalog("chain_min", int(ref.split(":")[1]))
    if ref.startswith("lukasiewicz:"):
        return catalog("lukasiewicz", int(ref.split(":")[1]))
    if ref.startswith("product:"):
        _, a, b = ref.split(":")
        return catalog("product", a, b)
    path = ref if os.path.isabs(ref) else os.path.join(base_dir, ref)
    if os.path.exists(path):
        return load_quantaloid(path)
    raise QuantcatError(f"unknown quantaloid reference {ref!r}")


def load_quantaloid(path: str) -> Quantaloid:
    doc = _read(path)
    name = doc.get("name", os.path.splitext(os.path.basename(path))[0])
    return validate_quantaloid(doc, name)


def load_category(path: str, Q: Quantaloid | None = None) -> QCategory:
    doc = _read(path)
    base_dir = os.path.dirname(path)
    if Q is None:
        Q = parse_quantaloid_ref(doc["quantaloid"], base_dir)
    ids = [c["id"] for c in doc["carrier"]]
    types = [Q.obj_index(c["type"]) for c in doc["carrier"]]
    idx = {i: k for k, i in enumerate(ids)}
    n = len(ids)
    hom = Q.bot[np.asarray(types)[:, None], np.asarray(types)[None, :]].copy()
    for x, y, e in doc.get("hom", []):
        if x not in idx or y not in idx:
            raise TypeMismatch(f"hom entry refers to unknown element ({x},{y})")
        i, j = idx[x], idx[y]
        hom[i, j] = Q.elem_id(types[i], types[j], e)
    name = doc.get("name", os.path.splitext(os.path.basename(path))[0])
    return check_category(Q, TypedSet(ids, types), hom, name)


def load_functor(path: str, source: QCategory | None = None,
                 target: QCategory | None = None) -> QFunctor:
    doc = _read(path)
    base_dir = os.path.dirname(path)
    if source is None:
        source = load_category(os.path.join(base_dir, doc["source"]))
    if target is None:
        target = load_category(os.path.join(base_dir, doc["target"]))
    tgt_idx = {i: k for k, i in enumerate(target.ids)}
    table = np.zeros(source.n, dtype=np.int64)
    mapping = doc["map"]
    for k, x in enumerate(source.ids):
        if x not in mapping:
            raise SignatureMismatch(f"map misses element {x!r}")
        table[k] = tgt_idx[mapping[x]]
    return QFunctor(source, target, table,
                    doc.get("name", os.path.basename(path)))


def load_distributor(path: str, source: QCategory | None = None,
                     target: QCategory | None = None) -> QDistributor:
    doc = _read(path)
    base_dir = os.path.dirname(path)
    if source is None:
        source = load_category(os.path.join(base_dir, doc["source"]))
    if target is None:
        target = load_category(os.path.join(base_dir, doc["target"]))
    Q = source.Q
    mat = source.bot_against(target).copy()
    src_idx = {i: k for k, i in enumerate(source.ids)}
    tgt_idx = {i: k for k, i in enumerate(target.ids)}
    for x, y, e in doc.get("entries", []):
        i, j = src_idx[x], tgt_idx[y]
        mat[i, j] = Q.elem_id(int(source.types[i]), int(target.types[j]), e)
    return QDistributor(source, target, mat, validated=False,
                        name=doc.get("name", os.path.basename(path)))


def detect_kind(path: str) -> str:
    doc = _read(path)
    if "objects" in doc and "homs" in doc:
        return "quantaloid"
    if "carrier" in doc:
        return "category"
    if "entries" in doc:
        return "distributor"
    if "map" in doc:
        return "functor"
    raise QuantcatError(f"cannot tell what kind of file {path!r} is")


def dump_carrier(carrier) -> dict:
    """Canonical enumeration of a presheaf carrier, for `presheaf build`."""
    return {
        "category": carrier.base_X.name,
        "kind": carrier.kind,
        "size": carrier.n,
        "elements": [carrier.describe(i) for i in range(carrier.n)],
    }


# ---------------------------------------------------------------------------
# suite configuration
# ---------------------------------------------------------------------------

DEFAULT_QUANTALOIDS = ["boolean2", "chain_min:3", "lukasiewicz:3",
                       "product:boolean2:boolean2"]
SUITE_NAMES = ("lemmas2", "laws", "theorems5_7", "correspondence8", "monads")


class SuiteConfig:
    def __init__(self, quantaloids=None, max_carrier=DEFAULT_CAP,
                 max_category_size=3, seed=0, suites=None, output_path=None,
                 human=False, workers=4, mutate=None):
        self.quantaloids = list(quantaloids or DEFAULT_QUANTALOIDS)
        self.max_carrier = int(max_carrier)
        self.max_category_size = int(max_category_size)
        self.seed = int(seed) & ((1 << 64) - 1)
        self.suites = list(SUITE_NAMES) if suites is None else list(suites)
        self.output_path = output_path
        self.human = bool(human)
        self.workers = int(workers)
        self.mutate = mutate
        if self.max_carrier <= 0 or self.max_category_size <= 0:
            raise QuantcatError("caps must be positive")
        for s in self.suites:
            if s not in SUITE_NAMES:
                raise QuantcatError(f"unknown suite {s!r}")

    @classmethod
    def from_doc(cls, doc: dict) -> "SuiteConfig":
        return cls(
            quantaloids=doc.get("quantaloids"),
            max_carrier=doc.get("maxCarrier", DEFAULT_CAP),
            max_category_size=doc.get("maxCategorySize", 3),
            seed=doc.get("seed", 0),
            suites=doc.get("suites"),
            output_path=doc.get("outputPath"),
            human=doc.get("human", False),
            workers=doc.get("workers", 4),
            mutate=doc.get("mutate"),
        )

    def to_doc(self) -> dict:
        return {
            "quantaloids": self.quantaloids,
            "maxCarrier": self.max_carrier,
            "maxCategorySize": self.max_category_size,
            "seed": self.seed,
            "suites": self.suites,
            "outputPath": self.output_path,
            "mutate": self.mutate,
        }
