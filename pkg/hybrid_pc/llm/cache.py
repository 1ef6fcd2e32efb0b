"""On-disk response cache keyed by a hash of (model, temperature, prompt)."""

import hashlib
import json
import logging
import os
import tempfile
import threading
from pathlib import Path

from .client import Completer
from .exceptions import CacheMissError, LlmAPIError

logger = logging.getLogger(__name__)


def cache_key(model: str, temperature: float, prompt: str) -> str:
    """SHA-256 hex digest of the canonical JSON encoding of the request."""
    blob = json.dumps(
        {"model": model, "temperature": float(temperature), "prompt": prompt},
        sort_keys=True,
        ensure_ascii=False,
        separators=(",", ":"),
    )
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()


class ResponseCache:
    """
    One file per response, named by its hex key.

    Writes go to a temporary file in the same directory and are moved into
    place with ``os.replace`` so concurrent writers never expose partial files.
    """

    def __init__(self, directory: str | Path):
        self.directory = Path(directory)

    def path_for(self, key: str) -> Path:
        return self.directory / key

    def get(self, key: str) -> str | None:
        path = self.path_for(key)
        if not path.is_file():
            return None
        return path.read_bytes().decode("utf-8")

    def put(self, key: str, text: str) -> None:
        self.directory.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=self.directory, prefix=f".{key}.", suffix=".tmp")
        try:
            with os.fdopen(fd, "wb") as f:
                f.write(text.encode("utf-8"))
            os.replace(tmp, self.path_for(key))
        except BaseException:
            Path(tmp).unlink(missing_ok=True)
            raise


def cached_complete(
    client: Completer | None,
    prompt: str,
    cache: ResponseCache,
    model: str,
    temperature: float = 0.0,
    online: bool = False,
) -> str:
    """
    Return the cached response for a prompt, fetching it when online.

    Args:
        client: Live client; never touched on a cache hit or when offline
        prompt: Prompt text
        cache: Response cache
        model: Model name (part of the key)
        temperature: Temperature (part of the key)
        online: Allow network calls on a miss

    Returns:
        Raw response text

    Raises:
        CacheMissError: Offline and no cached response
        LlmAPIError: Online and the request fails after retries
    """
    key = cache_key(model, temperature, prompt)
    hit = cache.get(key)
    if hit is not None:
        logger.debug(f"Cache hit {key[:12]}")
        return hit
    if not online:
        raise CacheMissError(key)
    if client is None:
        raise LlmAPIError("Online mode requested but no completion client is configured")
    logger.info(f"Cache miss {key[:12]}, querying {model}")
    text = client.complete(prompt)
    cache.put(key, text)
    return text


class CachedCompleter:
    """Completer backed by a ResponseCache; records every key it resolves."""

    def __init__(
        self,
        cache: ResponseCache,
        model: str,
        temperature: float = 0.0,
        client: Completer | None = None,
        online: bool = False,
    ):
        self.cache = cache
        self.model = model
        self.temperature = temperature
        self.client = client
        self.online = online
        self.keys: list[str] = []
        self._lock = threading.Lock()

    def complete(self, prompt: str) -> str:
        with self._lock:
            self.keys.append(cache_key(self.model, self.temperature, prompt))
        return cached_complete(
            self.client, prompt, self.cache, self.model, self.temperature, self.online
        )
