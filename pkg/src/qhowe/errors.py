"""Exception types shared across the package."""

from __future__ import annotations


class QHoweError(Exception):
    """Base class for every error raised by this package."""


class DomainError(QHoweError, ValueError):
    """An argument lies outside the domain of an operation."""


class InvalidBaseError(DomainError):
    """A q-number base exponent ``d`` was not positive."""


class SpecializationPole(QHoweError, ZeroDivisionError):
    """A denominator vanished after substituting ``t -> q^m``."""


class EvaluationPole(QHoweError, ZeroDivisionError):
    """A denominator vanished at a numeric evaluation point."""


class ContextError(QHoweError, ValueError):
    """Objects from incompatible variable contexts or rings were combined."""


class ConfigError(QHoweError, ValueError):
    """A run configuration or representation assignment is incomplete."""


class InvariantViolation(QHoweError):
    """An exact identity that must hold came out false.

    Attributes:
        residue: The nonzero normal form left over, when there is one.
    """

    def __init__(self, message: str, residue=None):
        super().__init__(message)
        self.residue = residue
