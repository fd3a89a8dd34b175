"""Exception hierarchy shared across the package."""

from __future__ import annotations


class RepTowerError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(RepTowerError):
    """Invalid input data: malformed tables, non-unitary matrices, bad schemas."""


class DegeneracyError(RepTowerError):
    """A randomized numerical routine failed to resolve a degeneracy within
    its retry budget.  Re-running with a different seed may succeed."""


class InconsistencyError(RepTowerError):
    """Two independently computed quantities that must agree by a proven
    identity disagree.  This is never patched over: it indicates a bug."""
