"""Shared exception types."""

from __future__ import annotations


class PrecisionError(ArithmeticError):
    """A 2-adic computation could not be decided at the working precision."""


class InvariantViolation(RuntimeError):
    """An internal cross-check that must hold mathematically has failed."""
