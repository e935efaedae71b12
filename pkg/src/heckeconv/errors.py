"""Exception hierarchy shared by every module."""

from __future__ import annotations


class HeckeConvError(Exception):
    """Base class for all library errors."""


class DomainError(HeckeConvError, ValueError):
    """An argument lies outside the domain of the operation."""


class PoleError(DomainError):
    """Evaluation at a pole; ``residue`` carries the residue when it is known."""

    def __init__(self, message: str, residue=None):
        super().__init__(message)
        self.residue = residue


class CutContactError(DomainError):
    """A principal-branch evaluation was requested on the branch cut."""


class PrecisionExhaustedError(HeckeConvError, ArithmeticError):
    """A series or expansion failed to converge within the term budget."""


class RegimeError(DomainError):
    """Parameters violate the hypotheses of the requested identity."""


class UnsupportedWeightError(HeckeConvError, ValueError):
    """The weight has no supported eigenform table (dim S_k >= 2 or odd k)."""


class TableTooShortError(HeckeConvError, ValueError):
    """A coefficient table is too short for the requested accuracy."""

    def __init__(self, message: str, required: int):
        super().__init__(message)
        self.required = required


class KernelFailure(HeckeConvError, RuntimeError):
    """A computed quantity violated a hard sanity property."""
