"""Tests for the chat-completion client and rate limiter."""

from unittest.mock import MagicMock, Mock, patch

import httpx
import pytest
import respx

from hybrid_pc.llm import (
    LlmAPIError,
    LlmAuthError,
    LlmClient,
    LlmConnectionError,
    LlmRateLimitError,
    RateLimiter,
)

ENDPOINT = "https://llm.example.com/v1/chat/completions"


def _response(status_code: int, payload: dict | None = None) -> Mock:
    response = Mock()
    response.status_code = status_code
    response.is_success = 200 <= status_code < 300
    response.text = "error body"
    response.json.return_value = payload or {}
    return response


def _answer(text: str) -> dict:
    return {"choices": [{"message": {"role": "assistant", "content": text}}]}


def _client(mock_client_class, *responses, **kwargs) -> tuple[LlmClient, MagicMock]:
    mock_http = MagicMock()
    mock_http.post.side_effect = list(responses)
    mock_client_class.return_value = mock_http
    kwargs.setdefault("retry_backoff", 0.0)
    return LlmClient(ENDPOINT, "test-key", "test-model", **kwargs), mock_http


class TestLlmClientInit:
    """Tests for LlmClient initialization."""

    def test_init_strips_trailing_slash(self):
        """Test that a trailing slash is stripped from the endpoint."""
        client = LlmClient(ENDPOINT + "/", "test-key", "test-model")
        assert client.endpoint == ENDPOINT
        client.close()

    @patch("httpx.Client")
    def test_init_sets_bearer_header(self, mock_client_class):
        """Test that the API key is sent as a bearer token."""
        LlmClient(ENDPOINT, "test-key", "test-model", timeout=5.0)
        kwargs = mock_client_class.call_args.kwargs
        assert kwargs["headers"]["Authorization"] == "Bearer test-key"
        assert kwargs["timeout"] == 5.0


class TestLlmClientComplete:
    """Tests for LlmClient.complete."""

    @patch("httpx.Client")
    def test_complete_success(self, mock_client_class):
        """Test a successful completion returns the first choice's content."""
        client, mock_http = _client(mock_client_class, _response(200, _answer("['A']")))

        assert client.complete("hello") == "['A']"
        mock_http.post.assert_called_once_with(
            ENDPOINT,
            json={
                "model": "test-model",
                "temperature": 0.0,
                "messages": [{"role": "user", "content": "hello"}],
            },
        )
        assert client.request_count == 1

    @patch("httpx.Client")
    def test_auth_error_not_retried(self, mock_client_class):
        """Test 401 raises LlmAuthError without retrying."""
        client, mock_http = _client(mock_client_class, _response(401), _response(200))

        with pytest.raises(LlmAuthError, match="rejected credentials"):
            client.complete("hello")
        assert mock_http.post.call_count == 1

    @patch("httpx.Client")
    def test_server_error_retried(self, mock_client_class):
        """Test a 5xx answer is retried and the retry's answer returned."""
        client, mock_http = _client(
            mock_client_class, _response(503), _response(200, _answer("B"))
        )

        assert client.complete("hello") == "B"
        assert mock_http.post.call_count == 2

    @patch("httpx.Client")
    def test_client_error_not_retried(self, mock_client_class):
        """Test a 4xx answer other than 429 fails immediately."""
        client, mock_http = _client(mock_client_class, _response(400), _response(200))

        with pytest.raises(LlmAPIError) as exc_info:
            client.complete("hello")
        assert exc_info.value.status_code == 400
        assert mock_http.post.call_count == 1

    @patch("httpx.Client")
    def test_rate_limit_exhausts_retries(self, mock_client_class):
        """Test repeated 429 answers raise LlmRateLimitError after max_retries."""
        client, mock_http = _client(
            mock_client_class, *[_response(429)] * 3, max_retries=2
        )

        with pytest.raises(LlmRateLimitError):
            client.complete("hello")
        assert mock_http.post.call_count == 3

    @patch("httpx.Client")
    def test_connection_error(self, mock_client_class):
        """Test connection failures raise LlmConnectionError."""
        client, _ = _client(
            mock_client_class, httpx.ConnectError("refused"), max_retries=0
        )

        with pytest.raises(LlmConnectionError, match="Failed to connect"):
            client.complete("hello")

    @patch("httpx.Client")
    def test_timeout(self, mock_client_class):
        """Test timeouts raise LlmConnectionError."""
        client, _ = _client(
            mock_client_class, httpx.ReadTimeout("slow"), max_retries=0
        )

        with pytest.raises(LlmConnectionError, match="timed out"):
            client.complete("hello")

    @patch("httpx.Client")
    def test_transport_errors_retried(self, mock_client_class):
        """Test dropped connections are retried like connect failures."""
        client, mock_http = _client(
            mock_client_class,
            httpx.ReadError("connection reset"),
            httpx.RemoteProtocolError("server disconnected"),
            _response(200, _answer("C")),
        )

        assert client.complete("hello") == "C"
        assert mock_http.post.call_count == 3

    @patch("httpx.Client")
    def test_transport_error_wrapped(self, mock_client_class):
        """Test transport errors surface as LlmConnectionError."""
        client, _ = _client(
            mock_client_class, httpx.ReadError("connection reset"), max_retries=0
        )

        with pytest.raises(LlmConnectionError, match="Transport error"):
            client.complete("hello")

    @patch("httpx.Client")
    def test_missing_content(self, mock_client_class):
        """Test a response without choices raises LlmAPIError."""
        client, _ = _client(mock_client_class, _response(200, {"choices": []}))

        with pytest.raises(LlmAPIError, match="choices"):
            client.complete("hello")

    @respx.mock
    def test_complete_over_http(self):
        """Test the full request path against a mocked endpoint."""
        route = respx.post(ENDPOINT).mock(
            return_value=httpx.Response(200, json=_answer("['smoke']"))
        )

        with LlmClient(ENDPOINT, "test-key", "test-model") as client:
            assert client.complete("list nodes") == "['smoke']"

        assert route.called
        request = route.calls.last.request
        assert request.headers["Authorization"] == "Bearer test-key"


class TestRateLimiter:
    """Tests for RateLimiter."""

    def test_unlimited(self):
        """Test that no limit allows every request."""
        limiter = RateLimiter()
        assert all(limiter.is_allowed(ENDPOINT) for _ in range(100))

    def test_limit_per_endpoint(self):
        """Test the limit applies per endpoint."""
        limiter = RateLimiter(limit=2)
        assert limiter.is_allowed("a")
        assert limiter.is_allowed("a")
        assert not limiter.is_allowed("a")
        assert limiter.is_allowed("b")

    @patch("hybrid_pc.llm.rate_limiter.time")
    def test_window_expires(self, mock_time):
        """Test requests older than the window no longer count."""
        mock_time.time.return_value = 1000.0
        limiter = RateLimiter(limit=1, window=60.0)
        assert limiter.is_allowed("a")
        assert not limiter.is_allowed("a")
        assert limiter.get_retry_after("a") == 60

        mock_time.time.return_value = 1061.0
        assert limiter.is_allowed("a")

    def test_retry_after_without_requests(self):
        """Test retry-after is zero for an unused endpoint."""
        assert RateLimiter(limit=1).get_retry_after("a") == 0
