"""Base exceptions shared across hybrid-pc."""


class HybridPCError(Exception):
    """Base exception for every domain error raised by hybrid-pc."""

    def __init__(self, message: str):
        self.message = message
        super().__init__(message)


class DatasetFormatError(HybridPCError):
    """Raised when a dataset file or matrix violates the dataset format."""

    def __init__(self, message: str = "Invalid dataset"):
        super().__init__(message)
