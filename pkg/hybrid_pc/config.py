"""Configuration management for the language-model client."""

from dataclasses import dataclass
from os import environ

from dotenv import load_dotenv

from .exceptions import HybridPCError


class ConfigError(HybridPCError):
    """Raised when configuration is invalid or missing."""
    pass


@dataclass
class Config:
    """LLM settings loaded from environment variables."""

    # Endpoint (required only online)
    llm_endpoint: str
    llm_api_key: str

    # Request settings
    model: str
    temperature: float
    timeout: float
    max_retries: int
    max_concurrency: int

    # Cache and throttling
    cache_dir: str
    rate_limit: int | None  # Requests per minute per endpoint; None disables throttling
    online: bool


def _parse_number(name: str, default: str, kind: type, errors: list[str], minimum: float) -> float:
    raw = environ.get(name, default)
    try:
        value = kind(raw)
    except ValueError:
        errors.append(f"{name} must be a number, got: {raw}")
        return kind(default)
    if value < minimum:
        errors.append(f"{name} must be >= {minimum}, got: {raw}")
    return value


def load_config(online: bool = False) -> Config:
    """
    Load configuration from environment variables.

    Required when ``online``:
        - LLM_ENDPOINT: Chat-completion URL
        - LLM_API_KEY: Bearer token for the endpoint

    Optional:
        - LLM_MODEL: Model name (default: gpt-4)
        - LLM_TEMPERATURE: Sampling temperature (default: 0)
        - LLM_TIMEOUT: Request timeout in seconds (default: 60)
        - LLM_CACHE_DIR: Response cache directory (default: .llm_cache)
        - LLM_MAX_RETRIES: Retries per request (default: 2)
        - LLM_MAX_CONCURRENCY: Requests in flight (default: 4)
        - RATE_LIMIT: Requests per minute per endpoint (default: unlimited)

    Raises:
        ConfigError: If variables are missing or malformed.
    """
    load_dotenv()

    errors: list[str] = []

    llm_endpoint = environ.get("LLM_ENDPOINT", "").rstrip("/")
    llm_api_key = environ.get("LLM_API_KEY", "")
    if online:
        if not llm_endpoint:
            errors.append("LLM_ENDPOINT is required in online mode")
        if not llm_api_key:
            errors.append("LLM_API_KEY is required in online mode")

    temperature = _parse_number("LLM_TEMPERATURE", "0", float, errors, 0)
    timeout = _parse_number("LLM_TIMEOUT", "60", float, errors, 0)
    max_retries = _parse_number("LLM_MAX_RETRIES", "2", int, errors, 0)
    max_concurrency = _parse_number("LLM_MAX_CONCURRENCY", "4", int, errors, 1)

    # Parse rate limit
    rate_limit: int | None = None
    rate_limit_str = environ.get("RATE_LIMIT", "")
    if rate_limit_str:
        try:
            rate_limit = int(rate_limit_str)
        except ValueError:
            errors.append(f"RATE_LIMIT must be an integer, got: {rate_limit_str}")

    if errors:
        raise ConfigError("Configuration errors:\n" + "\n".join(f"  - {e}" for e in errors))

    return Config(
        llm_endpoint=llm_endpoint,
        llm_api_key=llm_api_key,
        model=environ.get("LLM_MODEL", "gpt-4"),
        temperature=float(temperature),
        timeout=float(timeout),
        max_retries=int(max_retries),
        max_concurrency=int(max_concurrency),
        cache_dir=environ.get("LLM_CACHE_DIR", ".llm_cache"),
        rate_limit=rate_limit,
        online=online,
    )
