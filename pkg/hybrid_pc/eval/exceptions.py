"""Custom exceptions for evaluation and benchmarking."""

from hybrid_pc.exceptions import HybridPCError


class EvalError(HybridPCError):
    """Raised for invalid evaluation requests."""

    def __init__(self, message: str = "Invalid evaluation request"):
        super().__init__(message)


class BenchConfigError(EvalError):
    """Raised when a bench configuration file is missing fields or malformed."""

    def __init__(self, message: str = "Invalid bench configuration"):
        super().__init__(message)
