"""Hybrid prior-constrained PC causal discovery toolkit."""

__version__ = "1.0.0"
