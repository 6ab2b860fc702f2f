"""Exception hierarchy shared by every module."""


class HyperTuranError(Exception):
    """Base class for all errors raised by the package."""


class UniformityError(HyperTuranError, ValueError):
    """An edge does not have exactly ``r`` vertices."""


class DuplicateEdgeError(HyperTuranError, ValueError):
    """An edge was supplied twice."""


class VertexRangeError(HyperTuranError, ValueError):
    """A vertex lies outside ``1..n``."""


class HypergraphParseError(HyperTuranError, ValueError):
    """Malformed ``.hg`` text. Carries the 1-based offending line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class OutOfScopeError(HyperTuranError, ValueError):
    """Parameters fall outside the range where a closed form is known."""


class InfeasibleConstructionError(HyperTuranError, ValueError):
    """The requested construction does not fit on ``n`` vertices."""


class SpecError(HyperTuranError, ValueError):
    """A forbidden-pattern description is invalid."""
