"""Exception hierarchy.

Every error raised by the library derives from :class:`OrthoError`.  The CLI
maps :class:`PreconditionError` subclasses to exit code 3 and
:class:`BudgetExceeded` to exit code 4.
"""

from __future__ import annotations


class OrthoError(Exception):
    """Base class for all library errors."""


class PreconditionError(OrthoError, ValueError):
    """An operation was called on input violating its precondition."""


class CompositeP(PreconditionError):
    pass


class DegreeOutOfRange(PreconditionError):
    pass


class ReducibleModulus(PreconditionError):
    pass


class DivisionByZero(PreconditionError, ZeroDivisionError):
    pass


class FieldMismatch(PreconditionError):
    pass


class OddCharacteristic(PreconditionError):
    pass


class EvenCharacteristic(PreconditionError):
    pass


class ShapeMismatch(PreconditionError):
    pass


class DimensionOutOfRange(PreconditionError):
    pass


class Singular(PreconditionError):
    pass


class Degenerate(Singular):
    """Quadratic form whose polar form has a nonzero radical."""


class SingularForm(Singular):
    """Quadratic form with a nonzero radical."""


class NotSymmetric(PreconditionError):
    pass


class NotAlternating(PreconditionError):
    pass


class OddDimension(PreconditionError):
    pass


class EvenDimension(PreconditionError):
    pass


class IsotropicVector(PreconditionError):
    pass


class SingularVector(PreconditionError):
    """Transvection requested for a vector with Q(v) = 0."""


class NotSpecial(PreconditionError):
    """Spinor norm requested for an element of determinant -1."""


class NotAnIsometry(PreconditionError):
    pass


class FormMismatch(PreconditionError):
    pass


class UnsupportedCombination(PreconditionError):
    pass


class BudgetExceeded(OrthoError):
    """An enumeration would exceed the configured element budget."""
