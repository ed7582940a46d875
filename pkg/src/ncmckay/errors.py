"""
Errors Module

Exception hierarchy shared by the algebra, sheaf and verification layers.
"""

from typing import Any, Optional


class NcMcKayError(Exception):
    """Base class for every error raised by ncmckay."""


class RingMismatchError(NcMcKayError, ValueError):
    """Operands live in incompatible rings (parameter system, field or chart)."""


class GluingError(NcMcKayError, ValueError):
    """A chart tuple does not glue to a morphism of divisorial sheaves."""


class UnknownBudgetExceeded(NcMcKayError, RuntimeError):
    """A linear system would exceed the configured number of unknowns."""

    def __init__(self, requested: int, limit: int):
        super().__init__(f"Linear system needs {requested} unknowns, limit is {limit}")
        self.requested = requested
        self.limit = limit


class ReductionError(NcMcKayError, RuntimeError):
    """The division algorithm did not terminate within its guard."""

    def __init__(self, message: str, hom: Optional[Any] = None):
        super().__init__(message)
        self.hom = hom


class ConfigError(NcMcKayError, ValueError):
    """Configuration file could not be read or is malformed."""
