"""Exception types shared across the package."""

from __future__ import annotations


class DigitalFPError(Exception):
    """Base class for all package errors."""


class InputError(DigitalFPError, ValueError):
    """Malformed or out-of-contract input (bad dimension, unknown point, ...)."""


class BudgetError(DigitalFPError):
    """An exhaustive search hit its budget before reaching a verdict.

    ``partial`` carries how many maps had been produced when the search stopped.
    """

    def __init__(self, message: str, partial: int = 0, nodes: int = 0):
        super().__init__(message)
        self.partial = partial
        self.nodes = nodes


class ContradictionError(DigitalFPError):
    """A proven statement failed on a concrete instance. Indicates a library bug."""
