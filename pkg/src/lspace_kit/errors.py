"""Exception types shared across the kit."""

from __future__ import annotations


class LSpaceKitError(Exception):
    """Base class for every error raised by the kit."""


class InvalidParameters(LSpaceKitError, ValueError):
    pass


class NotLSpaceKnot(LSpaceKitError, ValueError):
    """Input cannot be the Alexander polynomial of an L-space knot."""


class NotLSpaceLink(LSpaceKitError, ValueError):
    """Computed H-function breaks a necessary condition for L-space links."""

    def __init__(self, message: str, violations: list | None = None):
        super().__init__(message)
        self.violations = violations or []


class LatticeMismatch(LSpaceKitError, ValueError):
    """A lattice point has the wrong parity for the link's linking number."""


class NotRationalHomologySphere(LSpaceKitError, ValueError):
    """The surgery matrix is singular."""


class InconsistencyError(LSpaceKitError, RuntimeError):
    """Two independent computations disagree; this signals a bug."""

    def __init__(self, message: str, witness: dict | None = None):
        super().__init__(message)
        self.witness = witness or {}


class NotLSpace(LSpaceKitError, ValueError):
    """An operation that needs an L-space was given something else."""


class UnknownLink(LSpaceKitError, KeyError):
    pass
