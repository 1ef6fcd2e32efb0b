"""Rate limiting per completion endpoint."""

import threading
import time
from collections import defaultdict


class RateLimiter:
    """In-memory sliding window rate limiter per endpoint URL."""

    def __init__(self, limit: int | None = None, window: float = 60.0):
        """
        Args:
            limit: Requests allowed per window; None disables limiting
            window: Window length in seconds
        """
        self.limit = limit
        self._window = window
        # endpoint -> request timestamps
        self._requests: dict[str, list[float]] = defaultdict(list)
        self._lock = threading.Lock()

    def is_allowed(self, endpoint: str) -> bool:
        """Check if a request is allowed now, recording it if so."""
        if self.limit is None:
            return True

        now = time.time()
        cutoff = now - self._window
        with self._lock:
            self._requests[endpoint] = [ts for ts in self._requests[endpoint] if ts > cutoff]
            if len(self._requests[endpoint]) >= self.limit:
                return False
            self._requests[endpoint].append(now)
            return True

    def get_retry_after(self, endpoint: str) -> int:
        """Get seconds until the next request is allowed."""
        with self._lock:
            if not self._requests[endpoint]:
                return 0
            oldest = min(self._requests[endpoint])
        return max(1, int(self._window - (time.time() - oldest)))

    def wait(self, endpoint: str) -> None:
        """Block until a request to endpoint is allowed."""
        while not self.is_allowed(endpoint):
            time.sleep(self.get_retry_after(endpoint))
