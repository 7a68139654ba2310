"""Exception types shared across the package."""

from __future__ import annotations


class SymdetError(Exception):
    """Base class for all package-specific errors."""


class PolyParseError(SymdetError, ValueError):
    """Syntax error in a polynomial expression; carries the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class FieldMismatchError(SymdetError, ValueError):
    """Operands live over different coefficient fields or variable counts."""


class InputError(SymdetError, ValueError):
    """Malformed user input: bad matrix file, asymmetry, schema violations."""


class SingularMatrixError(SymdetError, ValueError):
    """A matrix required to be invertible (or of full rank) is not."""


class ResourceExhaustedError(SymdetError):
    """A configured step or degree cap was hit before the computation finished."""


class NotFiniteError(SymdetError):
    """A local colength required to be finite was not.

    ``level`` is the 1-based rank-condition level whose ideal failed the
    zero-dimensionality check, when applicable.
    """

    def __init__(self, message: str, level: int | None = None, label: str = ""):
        super().__init__(message)
        self.level = level
        self.label = label


class AllTrialsNotFiniteError(SymdetError):
    """Every genericity trial produced a non-finite value."""

    def __init__(self, message: str, diagnostics: list[str] | None = None):
        super().__init__(message)
        self.diagnostics = diagnostics or []


class OddSumError(SymdetError):
    """The pre-halving binomial sum of mixed degrees came out odd.

    This indicates an internal inconsistency (the sum counts the points of a
    double cover, so it must be even); it is never expected on valid input.
    """
