"""Exception types. Every validation error carries a concrete witness."""

from __future__ import annotations


class QuantcatError(Exception):
    """Base class; `witness` is a small dict naming the offending elements."""

    def __init__(self, message: str, witness: dict | None = None):
        super().__init__(message)
        self.witness = witness or {}


class NotALattice(QuantcatError):
    pass


class NotAssociative(QuantcatError):
    pass


class NotUnital(QuantcatError):
    pass


class NotSupPreserving(QuantcatError):
    pass


class TypeMismatch(QuantcatError):
    pass


class UnknownCatalogEntry(QuantcatError):
    pass


class NotReflexive(QuantcatError):
    pass


class NotTransitive(QuantcatError):
    pass


class TypeNotPreserved(QuantcatError):
    pass


class SignatureMismatch(QuantcatError):
    pass


class EmptyFamily(QuantcatError):
    pass


class CapExceeded(QuantcatError):
    """A carrier construction would exceed the configured size cap.

    `estimated` is the exact element count when enumeration got far enough
    to know it, otherwise a lower bound (at least cap+1).
    """

    def __init__(self, estimated: int, cap: int, detail: str = ""):
        if detail:
            msg = (f"carrier construction stopped at {estimated} elements "
                   f"(cap {cap}): {detail}")
        else:
            msg = f"carrier size {estimated} exceeds cap {cap}"
        super().__init__(msg, {"estimated": estimated, "cap": cap})
        self.estimated = estimated
        self.cap = cap
        self.detail = detail


class AdjunctionAssertionFailed(QuantcatError):
    """Internal bug signal: a construction that must be adjoint is not."""


class HypothesisFailed(QuantcatError):
    """A theorem hypothesis does not hold on the given instance."""


class FingerprintMismatch(QuantcatError):
    """A table file refers to a category with a different fingerprint."""
