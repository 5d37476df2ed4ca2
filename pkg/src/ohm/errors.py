"""Exception types shared across the package."""

from __future__ import annotations


class OhmError(Exception):
    """Base class for all library errors."""


class CapExceededError(OhmError):
    """An enumeration would visit more contributor tuples than the cap allows."""

    def __init__(self, predicted: int, cap: int):
        self.predicted = predicted
        self.cap = cap
        super().__init__(
            f"predicted enumeration size {predicted} exceeds cap {cap}"
        )


class WalkError(OhmError, ValueError):
    """An incidence sequence does not form a consecutive walk."""


class NotBidirectedError(OhmError, ValueError):
    """The operation requires every edge to carry exactly two incidences."""


class NoContributorDualError(OhmError, ValueError):
    """The contributor violates a precondition of the dual construction."""
