"""Exceptions shared across the package."""

from __future__ import annotations


class GalrepError(Exception):
    """Base class for package errors."""


class InvalidInput(GalrepError):
    """Caller violated a documented precondition."""


class BadPrime(GalrepError):
    """Prime unusable for the requested reduction (divides lc or disc)."""


class NonInvertibleLeading(GalrepError):
    """A leading coefficient was not invertible modulo a composite.

    Carries the nontrivial factor of the modulus that was discovered,
    so the caller can split the modulus and retry.
    """

    def __init__(self, factor: int, modulus: int):
        self.factor = factor
        self.modulus = modulus
        super().__init__(
            f"leading coefficient shares factor {factor} with modulus"
        )


class NotMonic(InvalidInput):
    """Operation requires a monic polynomial."""


class NotIrreducible(InvalidInput):
    """Operation requires an irreducible polynomial and detected otherwise."""


class BNotCoprimeConditions(InvalidInput):
    """Cofactor test preconditions (B^2 | disc, gcd(B, lc) = 1) violated."""


class RecognitionFailure(GalrepError):
    """Floating-point data did not round to integers within tolerance."""


class AmbiguousOrder(GalrepError):
    """Point-counting could not pin down a unique group order."""


class MissingDetector(GalrepError):
    """A requested zero-detector level l is not available."""


class Unrealizable(GalrepError):
    """No trace value is compatible with the requested conjugacy data."""


class CheckFailed(GalrepError):
    """A verification pipeline stage failed (CLI exit code 1)."""


class UsageError(GalrepError):
    """Bad command-line usage (CLI exit code 2)."""
