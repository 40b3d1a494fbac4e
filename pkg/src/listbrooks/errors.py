"""Exception types shared across the package."""

from __future__ import annotations


class GraphError(ValueError):
    """Malformed graph input (self-loop, out-of-range vertex, ...)."""


class ListError(ValueError):
    """A list or forbidden-color assignment that cannot be used."""


class HypothesisViolation(Exception):
    """An instance does not satisfy the hypotheses an algorithm relies on."""

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


class InternalInvariantError(RuntimeError):
    """A guarantee of a construction failed; indicates a bug or a bad instance."""
