"""Exception types raised on invalid input."""


class DomainError(ValueError):
    """An argument lies outside the domain of a function."""


class ShapeError(ValueError):
    """Two arrays that must share an alphabet have different lengths."""


class ValidationError(ValueError):
    """A probability vector or problem description is malformed.

    ``field`` names the offending input so callers (the CLI in particular)
    can point the user at it.
    """

    def __init__(self, message: str, field: str | None = None):
        self.field = field
        super().__init__(f"{field}: {message}" if field else message)
