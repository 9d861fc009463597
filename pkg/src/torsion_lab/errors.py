"""Exception hierarchy shared by the library and the CLI."""


class TorsionLabError(Exception):
    pass


class InputError(TorsionLabError, ValueError):
    """Bad user input: malformed documents, invalid complexes or bases."""


class NotRepresentableError(TorsionLabError, ValueError):
    """A value left the exact scalar domain (e.g. a nested radical)."""


class InconsistencyError(TorsionLabError, ArithmeticError):
    """Preconditions held but the computation still broke down."""


class DegenerateBasisError(TorsionLabError, ArithmeticError):
    """Float path: an assembled change-of-basis matrix is numerically singular."""
