"""Exception hierarchy shared by every module of the package."""


class CayleyCodesError(Exception):
    """Base class for all errors raised by this package."""


class InputError(CayleyCodesError, ValueError):
    """Malformed or out-of-domain input (bad literal, wrong group, invalid connection set)."""


class GroupMismatchError(InputError):
    """Operands live in different ambient groups."""


class PreconditionError(InputError):
    """A documented precondition of an operation does not hold."""


class LimitExceeded(CayleyCodesError):
    """A configured size, node or time budget was exhausted."""


class InternalConsistencyError(CayleyCodesError, AssertionError):
    """Two independent routes to the same mathematical fact disagreed.

    Seeing this means a bug in the library, never bad input.
    """
