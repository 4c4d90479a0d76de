"""Exception types shared across the package."""


class InputError(ValueError):
    """Invalid user input: bad expressions, inconsistent shapes, bad flags."""


class ParseError(InputError):
    """Syntax or range error in an operator expression, with position."""

    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class ModelInvalidError(InputError):
    """An explicit graded model violates the commutation relations."""


class InternalError(RuntimeError):
    """An internal invariant failed; indicates an engine bug, not bad input."""
