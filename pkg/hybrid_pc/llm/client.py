"""HTTP client for chat-completion endpoints."""

import logging
import threading
import time
from typing import Any, Protocol

import httpx

from .exceptions import (
    LlmAPIError,
    LlmAuthError,
    LlmConnectionError,
    LlmRateLimitError,
)
from .rate_limiter import RateLimiter

logger = logging.getLogger(__name__)


class Completer(Protocol):
    """Anything that turns a prompt into raw response text."""

    def complete(self, prompt: str) -> str: ...


class LlmClient:
    """HTTP client for an OpenAI-style chat-completion endpoint."""

    def __init__(
        self,
        endpoint: str,
        api_key: str,
        model: str,
        temperature: float = 0.0,
        timeout: float = 60.0,
        max_retries: int = 2,
        max_concurrency: int = 4,
        retry_backoff: float = 1.0,
        rate_limiter: RateLimiter | None = None,
    ):
        """
        Initialize the client.

        Args:
            endpoint: Full chat-completion URL
            api_key: Bearer token
            model: Model name sent with every request
            temperature: Sampling temperature
            timeout: Request timeout in seconds
            max_retries: Retries after connection errors, 429 and 5xx answers
            max_concurrency: Maximum requests in flight at once
            retry_backoff: Base delay in seconds, doubled after each retry
            rate_limiter: Optional per-endpoint throttle
        """
        self.endpoint = endpoint.rstrip("/")
        self.model = model
        self.temperature = temperature
        self.max_retries = max_retries
        self.retry_backoff = retry_backoff
        self.rate_limiter = rate_limiter or RateLimiter()
        self.request_count = 0
        self._count_lock = threading.Lock()
        self._slots = threading.BoundedSemaphore(max_concurrency)
        self._client = httpx.Client(
            headers={
                "Authorization": f"Bearer {api_key}",
                "Content-Type": "application/json",
            },
            timeout=timeout,
        )

    def _request(self, payload: dict[str, Any]) -> dict[str, Any]:
        """
        POST one request to the endpoint.

        Raises:
            LlmAuthError: If authentication fails
            LlmRateLimitError: On 429
            LlmAPIError: For other API errors
            LlmConnectionError: If connection fails
        """
        self.rate_limiter.wait(self.endpoint)
        with self._count_lock:
            self.request_count += 1
        try:
            with self._slots:
                response = self._client.post(self.endpoint, json=payload)
        except httpx.ConnectError as e:
            raise LlmConnectionError(f"Failed to connect to {self.endpoint}: {e}")
        except httpx.TimeoutException:
            raise LlmConnectionError(f"Request to {self.endpoint} timed out")
        except httpx.TransportError as e:
            raise LlmConnectionError(f"Transport error talking to {self.endpoint}: {e}")

        if response.status_code in (401, 403):
            raise LlmAuthError(f"Endpoint rejected credentials ({response.status_code})")
        if response.status_code == 429:
            raise LlmRateLimitError()
        if not response.is_success:
            raise LlmAPIError(
                f"Completion API error: {response.status_code} - {response.text}",
                status_code=response.status_code,
            )
        try:
            return dict(response.json())
        except ValueError as e:
            raise LlmAPIError(
                f"Completion API returned invalid JSON: {e}", status_code=response.status_code
            ) from e

    def complete(self, prompt: str) -> str:
        """
        Send a single user message and return the first choice's content.

        Args:
            prompt: User message text

        Returns:
            Raw response text

        Raises:
            LlmAuthError: If authentication fails (not retried)
            LlmAPIError: If the request still fails after retries
        """
        payload = {
            "model": self.model,
            "temperature": self.temperature,
            "messages": [{"role": "user", "content": prompt}],
        }
        attempt = 0
        while True:
            try:
                data = self._request(payload)
                break
            except LlmAuthError:
                raise
            except LlmAPIError as e:
                retryable = e.status_code is None or e.status_code == 429 or e.status_code >= 500
                if not retryable or attempt >= self.max_retries:
                    raise
                delay = self.retry_backoff * (2 ** attempt)
                logger.warning(f"Completion request failed ({e}); retrying in {delay:.1f}s")
                time.sleep(delay)
                attempt += 1

        try:
            return str(data["choices"][0]["message"]["content"])
        except (KeyError, IndexError, TypeError):
            raise LlmAPIError("Completion response has no choices[0].message.content")

    def close(self) -> None:
        """Close the HTTP client."""
        self._client.close()

    def __enter__(self) -> "LlmClient":
        return self

    def __exit__(self, *args: Any) -> None:
        self.close()
