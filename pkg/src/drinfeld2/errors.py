"""Exception types shared across the library."""


class ScaleGuardError(RuntimeError):
    """An operation was refused because it would exceed the configured work budget."""


class CrossCheckError(RuntimeError):
    """Two independent computations of the same quantity disagreed.

    This is raised instead of silently picking a side; callers must treat it
    as a bug signal, never as a recoverable condition.
    """


class PolyParseError(ValueError):
    """Malformed polynomial text; carries the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position
