class TrilieError(Exception):
    """Base class for every error raised by this package."""


class SpaceMismatchError(TrilieError, ValueError):
    """Vectors or maps from different spaces were combined."""


class ShapeError(TrilieError, ValueError):
    """A table or matrix does not match the spaces it claims to act on."""


class PreconditionError(TrilieError, ValueError):
    """An operation was called on input its contract does not cover."""


class DomainError(TrilieError, ValueError):
    """A cochain lies outside the subspace an operation is defined on."""


class UnsupportedDegreeError(TrilieError, NotImplementedError):
    """Cochain degree beyond what the dense kernels support."""


class InputError(TrilieError, ValueError):
    """A problem file or command-line argument could not be used."""


class ExprSyntaxError(InputError):
    """Malformed parameter expression; ``pos`` is the 0-based character offset."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


class ExprEvalError(InputError):
    """An expression could not be evaluated (unknown name, division by zero)."""


class ConstraintError(InputError):
    """A parameter assignment violates a declared guard."""

    def __init__(self, message: str, guard: str):
        super().__init__(message)
        self.guard = guard
