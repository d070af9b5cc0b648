"""Shared exception types."""

from __future__ import annotations


class DsseqError(Exception):
    """Base class for all package errors."""


class InvalidInput(DsseqError):
    """A precondition on an operation's input was violated."""


class CapExceeded(DsseqError):
    """A configurable search cap (pattern alphabet, formation size) was exceeded."""


class BudgetExceeded(DsseqError):
    """A value exceeded the materialization budget.

    ``bound`` carries the best bound we could certify instead of the exact
    value (a TowerBounds from :mod:`dsseq.ackermann`, an integer, or None).
    """

    def __init__(self, message: str, bound=None):
        super().__init__(message)
        self.bound = bound


class Incomparable(DsseqError):
    """Tower-number comparison could not be decided from the stored bounds."""


class InternalError(DsseqError):
    """A guaranteed-to-succeed step failed; indicates a defect, not bad input."""
