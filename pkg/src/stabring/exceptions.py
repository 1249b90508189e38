"""Exception and warning types shared across the package."""


class GraphFormatError(ValueError):
    """Raised when graph input text cannot be turned into a valid simple graph."""


class GraphFormatWarning(UserWarning):
    """Issued for recoverable input problems such as duplicate edges."""


class UndecidedError(RuntimeError):
    """A size guard was exceeded; the question is undecided at desk scale.

    Callers must surface this explicitly instead of guessing an answer.
    """


class InternalInconsistencyError(AssertionError):
    """Two independent computations that must agree did not.

    This always signals an implementation bug, never a property of the input.
    """


class NoWitnessError(ValueError):
    """No witness construction applies to the given graph."""
