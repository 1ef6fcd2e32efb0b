"""Custom exceptions for graph refinement."""

from hybrid_pc.exceptions import HybridPCError


class RefineError(HybridPCError):
    """Raised for invalid refinement parameters."""

    def __init__(self, message: str = "Invalid refinement configuration"):
        super().__init__(message)
