"""Exception hierarchy shared across the package."""


class TorstabError(Exception):
    """Base class for all package errors."""


class InputError(TorstabError):
    """Malformed or inconsistent user input (CLI exit code 1)."""


class DimensionMismatchError(InputError):
    """Vectors of different lengths mixed in one computation."""


class ZeroSectionError(InputError):
    """All fiber values vanish: the lift lies in the zero section."""


class InternalInvariantError(TorstabError):
    """A computed witness failed re-substitution (CLI exit code 2)."""
