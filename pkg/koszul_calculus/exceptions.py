"""
Error Hierarchy
===============
Every failure the engine can report is a KoszulError. Each class carries the
process exit code the CLI maps it to, so command handlers never translate
errors by hand.

Notes:
- KoszulError derives from ValueError: callers that only care about "bad
  input" can keep catching ValueError
- Exit codes: 1 property/precondition failure, 2 configuration or parse
  error, 3 resource cap exceeded
"""

from typing import Optional


class KoszulError(ValueError):
    """Base class for all engine errors."""

    exit_code: int = 1


class ConfigurationError(KoszulError):
    """Invalid flags, catalog parameters or field choice."""

    exit_code = 2


class PresentationParseError(KoszulError):
    """Presentation text could not be parsed."""

    exit_code = 2

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f'line {line}, column {column}: {message}')
        self.line = line
        self.column = column


class ResourceCapExceeded(KoszulError):
    """Tensor cap, weight window or generator cap exceeded."""

    exit_code = 3


class NotMember(KoszulError):
    """Vector does not lie in the given subspace."""


class NonComposable(KoszulError):
    """Matrix shapes do not compose."""


class NotAComplex(KoszulError):
    """Composition of consecutive differentials is nonzero."""


class NotACocycle(KoszulError):
    """An operand required to be a cocycle is not one."""


class NotACycle(KoszulError):
    """An operand required to be a cycle is not one."""


class ParityMismatch(KoszulError):
    """A homotopy witness was called outside its parity case."""


class WrongAlgebra(KoszulError):
    """Operation only defined for a specific catalog algebra."""

    exit_code = 2


class WordIndexError(KoszulError):
    """Out-of-range word letter or word index."""


class GeneratorMismatch(KoszulError):
    """Tensor elements or subspaces over different generator counts."""


def exit_code_for(error: Optional[BaseException]) -> int:
    """
    Map an exception to a process exit code.

    Args:
        error: Exception raised by a command (or None)

    Returns:
        0 for no error, the class exit code for KoszulError, 1 otherwise
    """
    if error is None:
        return 0
    if isinstance(error, KoszulError):
        return error.exit_code
    return 1
