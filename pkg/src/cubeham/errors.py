"""Exception hierarchy shared by every module."""

from __future__ import annotations


class CubehamError(Exception):
    """Base class for all errors raised by the package."""


class PreconditionError(CubehamError, ValueError):
    """An input violates the hypotheses of the operation."""


class MalformedInstanceError(PreconditionError):
    """Matching/fault input is not well formed (non-edge, not a matching, M and F overlap)."""


class ExceptionalCaseError(PreconditionError):
    """The input is the one excluded configuration of an otherwise total operation."""


class UnsupportedError(PreconditionError):
    """The request lies outside the supported dimension envelope."""


class InternalInvariantError(CubehamError, RuntimeError):
    """A guaranteed-to-exist object was not found; indicates a bug.

    ``trace`` carries the construction trace when one was being recorded.
    """

    def __init__(self, message: str, trace=None):
        super().__init__(message)
        self.trace = trace


class BudgetExceeded(CubehamError):
    """The search ran out of nodes before deciding feasibility."""


class CaseAInstance(CubehamError):
    """(Q_4, M, F) is the single exceptional configuration: no cycle exists."""


class CatalogMismatchError(CubehamError):
    """The derived exception catalog does not have the expected class counts."""
