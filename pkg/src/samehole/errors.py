"""Exception types shared across the package."""

from __future__ import annotations


class SameHoleError(Exception):
    """Base class for all errors raised by the package."""


class BudgetExceeded(SameHoleError):
    """A search ran out of its node-expansion budget."""


class PreconditionError(SameHoleError):
    """An operation was called on input that breaks its stated precondition.

    ``condition`` is a short machine-readable tag such as ``"spectrum"`` or
    ``"twinless"``.
    """

    def __init__(self, condition: str, message: str = ""):
        self.condition = condition
        super().__init__(f"{condition}: {message}" if message else condition)


class SpecError(SameHoleError):
    """A construction spec violates a named condition."""

    def __init__(self, condition: str, message: str = ""):
        self.condition = condition
        super().__init__(f"{condition} violated" + (f": {message}" if message else ""))


class ReconstructionError(SameHoleError):
    """Recovering structure (hyperedges, witnesses, blowup cliques) failed.

    On inputs that satisfy the documented preconditions this never happens, so
    seeing it means the input is outside the class the routine assumes.
    """


class ParseError(SameHoleError):
    """A text format could not be parsed."""


class StuckError(SameHoleError):
    """Decomposition reached a node where no outcome applies."""

    def __init__(self, message: str, residual=None):
        self.residual = residual
        super().__init__(message)
