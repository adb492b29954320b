"""Exception hierarchy shared across the package."""


class ConbranchError(Exception):
    """Base class for all errors raised by this package."""


class ModelError(ConbranchError):
    """Malformed model data (duplicate ids, non-finite coefficients, ...)."""


class InfeasibleBounds(ModelError):
    """A variable has lower bound > upper bound."""


class ContractViolation(ConbranchError):
    """A precondition of an operation was violated by the caller."""


class SolverFailure(ConbranchError):
    """Numerical breakdown inside the simplex solver."""

    def __init__(self, message, iterations=0):
        super().__init__(message)
        self.iterations = iterations


class UnsupportedFeature(ConbranchError):
    """Input uses a declared-out-of-scope feature (e.g. MPS RANGES)."""


class ParseError(ConbranchError):
    """Malformed model file."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class LatticeTooLarge(ConbranchError):
    """Brute-force enumeration refused: too many integer assignments."""


class SizeLimitExceeded(ConbranchError):
    """A generated LP would exceed the configured variable limit."""


class NonImprovingFile(ConbranchError):
    """Cut generation requested for a file with zero gain."""
