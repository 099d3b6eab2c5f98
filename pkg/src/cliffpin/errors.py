"""Exception hierarchy.

Input-class errors map to CLI exit code 2; failed internal consistency
checks map to exit code 3.
"""


class CliffpinError(Exception):
    """Base class for all package errors."""


class InputError(CliffpinError, ValueError):
    """Malformed or out-of-contract input."""


class ContractError(InputError):
    """An operation was called outside its documented preconditions."""


class SignatureMismatchError(ContractError):
    """Operands live in Clifford algebras of different signatures."""


class ResourceLimitError(InputError):
    """A configured size bound was exceeded."""


class SingularMatrixError(InputError):
    """A matrix that must be invertible is singular."""


class ZeroDivisorError(InputError, ZeroDivisionError):
    """Inversion of a zero divisor."""


class InternalCheckError(CliffpinError, AssertionError):
    """A structural identity that must hold was found to fail."""


def check(condition, message):
    """Raise :class:`InternalCheckError` unless ``condition`` holds."""
    if not condition:
        raise InternalCheckError(message)
