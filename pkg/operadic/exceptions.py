"""This module contains exceptions.
"""


class OperadicException(Exception):
    """
    Base class of every exception raised by operadic.
    """

    pass


class FieldError(OperadicException):
    """
    This exception is raised when a scalar field specification is invalid.
    """

    pass


class CharacteristicError(FieldError):
    """
    This exception is raised when the characteristic of the field divides the order
    of a symmetric group whose coinvariants are needed, or is not a prime.
    """

    pass


class ShapeError(OperadicException):
    """
    This exception is raised when matrices or vectors of incompatible shapes are
    combined.
    """

    pass


class ComplexError(OperadicException):
    """
    This exception is raised when a chain complex is built from differentials whose
    composite is not zero, or whose shapes do not match.
    """

    pass


class RepresentationError(OperadicException):
    """
    This exception is raised when matrices given as a symmetric group action do not
    define a right action.
    """

    pass


class PresentationError(OperadicException):
    """
    This exception is raised when an operad presentation is inconsistent.
    """

    pass


class UnsupportedOperadError(OperadicException):
    """
    This exception is raised when an operation is not available for the operad at
    hand.
    """

    pass


class AlgebraError(OperadicException):
    """
    This exception is raised when algebra or morphism data is malformed.
    """

    pass


class ModuleError(OperadicException):
    """
    This exception is raised when module data is malformed.
    """

    pass


class TruncationError(OperadicException):
    """
    This exception is raised when a weight component would be infinite dimensional
    within the configured bounds.
    """

    pass


class TwistingMorphismError(OperadicException):
    """
    This exception is raised when a convolution element does not satisfy the
    Maurer-Cartan equation.
    """

    pass


class InputError(OperadicException):
    """
    This exception is raised when a command line input cannot be parsed or refers to
    unknown objects.
    """

    def __init__(self, message: str, line: int = 0, column: int = 0):
        if line:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)
        self.line = line
        self.column = column


class SemiInfiniteError(OperadicException):
    """
    This exception is raised when a semi-infinite construction is requested for a
    structure whose certificate fails, or whose components are not finite.
    """

    pass
