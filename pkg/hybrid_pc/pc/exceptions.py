"""Custom exceptions for PC runs."""

from hybrid_pc.exceptions import HybridPCError


class PcError(HybridPCError):
    """Base exception for PC configuration and prior errors."""


class PriorKnowledgeError(PcError):
    """Raised for inconsistent prior knowledge or PC parameters."""
