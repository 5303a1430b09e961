class SpliceError(Exception):
    """Base class for all errors raised by splicetool."""


class TypingError(SpliceError):
    """Endpoints, colors or gap types do not line up."""


class UnknownIdError(SpliceError, KeyError):
    """A node, edge, color or species node is not declared."""

    def __str__(self) -> str:  # KeyError quotes its message otherwise
        return Exception.__str__(self)


class ValidationError(SpliceError):
    """A structure read from disk or built by hand violates its invariants."""
