"""Exact computations for categories enriched in a finite quantaloid.

Everything is finite and table-driven: hom lattices are integer-indexed,
all composites and residuals are exact lattice operations, and every
higher construction (presheaf carriers, monads, distributive laws, lax
algebras) bottoms out in a handful of integer kernels.
"""

from .errors import (
    QuantcatError,
    NotALattice,
    NotAssociative,
    NotUnital,
    NotSupPreserving,
    TypeMismatch,
    UnknownCatalogEntry,
    NotReflexive,
    NotTransitive,
    TypeNotPreserved,
    SignatureMismatch,
    EmptyFamily,
    CapExceeded,
    AdjunctionAssertionFailed,
    HypothesisFailed,
    FingerprintMismatch,
)
from .quantaloid import Lattice, Quantaloid, validate_quantaloid, catalog
from .qcat import (
    TypedSet,
    QCategory,
    QFunctor,
    check_category,
    underlying_order,
    iso_classes,
    check_functor,
    check_fully_faithful,
    functor_leq,
    check_adjoint,
    left_adjoint,
    right_adjoint,
    collage,
)
from .qdist import (
    QDistributor,
    compose,
    dist_residual_left,
    dist_residual_right,
    check_distributor,
    identity_dist,
    graph,
    cograph,
    dist_leq,
    dist_meet,
    dist_join,
    bottom_dist,
)
from . import presheaf, monads, laws, algebras, rand, suites

__all__ = [
    "QuantcatError", "NotALattice", "NotAssociative", "NotUnital",
    "NotSupPreserving", "TypeMismatch", "UnknownCatalogEntry",
    "NotReflexive", "NotTransitive", "TypeNotPreserved",
    "SignatureMismatch", "EmptyFamily", "CapExceeded",
    "AdjunctionAssertionFailed", "HypothesisFailed", "FingerprintMismatch",
    "Lattice", "Quantaloid", "validate_quantaloid", "catalog",
    "TypedSet", "QCategory", "QFunctor", "check_category",
    "underlying_order", "iso_classes", "check_functor",
    "check_fully_faithful", "functor_leq", "check_adjoint",
    "left_adjoint", "right_adjoint", "collage",
    "QDistributor", "compose", "dist_residual_left", "dist_residual_right",
    "check_distributor", "identity_dist", "graph", "cograph",
    "dist_leq", "dist_meet", "dist_join", "bottom_dist",
    "presheaf", "monads", "laws", "algebras", "rand", "suites",
]
