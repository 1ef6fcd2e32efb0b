"""Language-model prior acquisition: client, cache, prompts, parsing and scoring."""

from .cache import CachedCompleter, ResponseCache, cache_key, cached_complete
from .client import Completer, LlmClient
from .exceptions import (
    CacheMissError,
    LlmAPIError,
    LlmAuthError,
    LlmConnectionError,
    LlmRateLimitError,
    PriorError,
    ResponseParseError,
)
from .memorization import (
    TASK_KINDS,
    F1Score,
    MemScore,
    MemTask,
    render_mem_prompt,
    render_recognition_prompt,
    score_mem,
    split_for_mem,
)
from .parsing import PriorResponse
from .rate_limiter import RateLimiter
from .strategies import StrategyReport, bfs_prior, pairwise_prior

__all__ = [
    "TASK_KINDS",
    "CacheMissError",
    "CachedCompleter",
    "Completer",
    "F1Score",
    "LlmAPIError",
    "LlmAuthError",
    "LlmClient",
    "LlmConnectionError",
    "LlmRateLimitError",
    "MemScore",
    "MemTask",
    "PriorError",
    "PriorResponse",
    "RateLimiter",
    "ResponseCache",
    "ResponseParseError",
    "StrategyReport",
    "bfs_prior",
    "cache_key",
    "cached_complete",
    "pairwise_prior",
    "render_mem_prompt",
    "render_recognition_prompt",
    "score_mem",
    "split_for_mem",
]
