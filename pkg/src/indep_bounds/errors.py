"""Shared exception types."""

from __future__ import annotations


class InvalidProfile(ValueError):
    """A parameter profile fails its structural constraints."""


class InvalidTable(ValueError):
    """A partition table violates a row/column/total constraint."""


class TooLarge(ValueError):
    """An exact computation was requested beyond its size cap."""


class EmptyRange(ValueError):
    """An index interval required by a formula is empty."""


class EmptyRegion(ValueError):
    """A feasible region contains no points."""


class ConditionsUnmet(ValueError):
    """A construction's applicability conditions fail."""
