# -*- coding: utf-8 -*-
"""
Exception types raised by recwidth.

Everything derives from RecurrenceWidthError, itself a ValueError, so callers
that only care about "bad input" can catch the builtin.
"""


class RecurrenceWidthError(ValueError):
    """Base class for all recwidth failures."""


class FieldModulusError(RecurrenceWidthError):
    """The configured field modulus is not a usable NTT-friendly prime."""


class ZeroModulusError(RecurrenceWidthError):
    """Reduction modulo the zero polynomial was requested."""

    def __init__(self, message="zero modulus"):
        super().__init__(message)


class NotInvertibleError(RecurrenceWidthError):
    """A field element or polynomial has no inverse where one was needed."""

    def __init__(self, message="not invertible modulo m"):
        super().__init__(message)


class LeadingCoefficientError(NotInvertibleError):
    """The product of the g_{i,0} shares a root with the recurrence modulus."""

    def __init__(self, message="leading coefficients share roots with modulus"):
        super().__init__(message)


class SingularMatrixError(RecurrenceWidthError):
    """A square system has no unique solution."""

    def __init__(self, message="matrix singular"):
        super().__init__(message)


class NotStronglyRegularError(SingularMatrixError):
    """A leading principal minor vanished during Schur-complement inversion."""

    def __init__(self, message="not strongly regular"):
        super().__init__(message)


class DisplacementOperatorError(RecurrenceWidthError):
    """The Sylvester or Stein operator of a rep is not invertible."""

    def __init__(self, message="displacement operator not invertible"):
        super().__init__(message)


class SpecValidationError(RecurrenceWidthError):
    """A recurrence spec, descriptor or rep violates its shape or degree rules."""


class RepeatedPointsError(RecurrenceWidthError):
    """Evaluation points that must be distinct are not."""

    def __init__(self, message="evaluation points must be pairwise distinct"):
        super().__init__(message)


class SpecFileError(RecurrenceWidthError):
    """A JSON spec file could not be decoded into a recurrence spec."""
