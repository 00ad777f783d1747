"""Exception types shared across the package."""


class OrdoError(Exception):
    """Base class for all package errors."""


class ParseError(OrdoError):
    """Malformed textual input; carries the offending text and position."""

    def __init__(self, message, text=None, position=None):
        self.text = text
        self.position = position
        if text is not None and position is not None:
            message = f"{message} (in {text!r} at position {position})"
        super().__init__(message)


class GroupMismatchError(OrdoError):
    """Operands belong to different groups."""


class WindowError(OrdoError):
    """A window is malformed or a value refers outside its window."""


class OutOfWindowError(WindowError):
    """A finite-table oracle was queried beyond its window."""


class CycleError(OrdoError):
    """Transitive closure would create a cycle.  ``cycle`` lists the path."""

    def __init__(self, message, cycle):
        self.cycle = cycle
        super().__init__(message)


class BudgetError(OrdoError):
    """A configured search or scan budget was exhausted."""


class SolveError(OrdoError):
    """An extension problem violates a solver precondition."""
