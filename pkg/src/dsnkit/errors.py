"""Exception hierarchy shared by all modules."""


class DsnkitError(Exception):
    """Base class for all toolkit errors."""


class InputError(DsnkitError):
    """Malformed caller input: unknown vertex ids, bad weights, bad specs."""


class CapacityError(DsnkitError):
    """A desk-scale size cap was exceeded."""


class DomainError(DsnkitError):
    """Structurally valid input outside the operation's domain."""


class PreconditionError(DsnkitError):
    """A documented operation precondition does not hold."""


class InconsistencyError(DsnkitError):
    """Input contradicts an assumed structural property (e.g. minimality)."""


class InvariantError(DsnkitError):
    """A property that is proven to always hold failed at runtime.

    Raising this signals a bug in the toolkit itself, never a user error.
    """


class ParseError(InputError):
    """Malformed instance file; carries line/column information."""

    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column
