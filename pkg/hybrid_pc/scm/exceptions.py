"""Custom exceptions for structural causal model generation."""

from hybrid_pc.exceptions import HybridPCError


class ScmError(HybridPCError):
    """Raised for invalid mechanism, noise or distribution specifications."""

    def __init__(self, message: str = "Invalid structural causal model specification"):
        super().__init__(message)
