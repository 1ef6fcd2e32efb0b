"""Custom exceptions for LLM prior acquisition."""

from hybrid_pc.exceptions import HybridPCError


class LlmAPIError(HybridPCError):
    """Base exception for chat-completion API errors."""

    def __init__(self, message: str, status_code: int | None = None):
        self.status_code = status_code
        super().__init__(message)


class LlmAuthError(LlmAPIError):
    """Raised when authentication fails (401/403)."""

    def __init__(self, message: str = "Invalid or expired API key"):
        super().__init__(message, status_code=401)


class LlmRateLimitError(LlmAPIError):
    """Raised when the endpoint keeps answering 429."""

    def __init__(self, message: str = "Rate limited by the completion endpoint"):
        super().__init__(message, status_code=429)


class LlmConnectionError(LlmAPIError):
    """Raised when connection to the endpoint fails."""

    def __init__(self, message: str = "Failed to connect to the completion endpoint"):
        super().__init__(message)


class CacheMissError(HybridPCError):
    """Raised in offline mode when a prompt has no cached response."""

    def __init__(self, key: str):
        self.key = key
        super().__init__(
            f"No cached response for key {key} (offline mode; rerun with --online to fetch it)"
        )


class ResponseParseError(HybridPCError):
    """Raised when a response does not follow the requested output format."""

    def __init__(self, message: str = "Response does not match the requested format"):
        super().__init__(message)


class PriorError(HybridPCError):
    """Raised for invalid prior-acquisition or memorization requests."""

    def __init__(self, message: str = "Invalid prior request"):
        super().__init__(message)
