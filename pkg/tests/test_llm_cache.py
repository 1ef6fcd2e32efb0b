"""Tests for the on-disk response cache."""

from unittest.mock import Mock

import pytest

from hybrid_pc.llm import (
    CachedCompleter,
    CacheMissError,
    LlmAPIError,
    ResponseCache,
    cache_key,
    cached_complete,
)


class TestCacheKey:
    """Tests for cache_key."""

    def test_stable_hex_digest(self):
        key = cache_key("gpt-4", 0.0, "prompt")
        assert key == cache_key("gpt-4", 0, "prompt")
        assert len(key) == 64
        assert int(key, 16) >= 0

    def test_every_field_matters(self):
        base = cache_key("gpt-4", 0.0, "prompt")
        assert cache_key("gpt-3.5", 0.0, "prompt") != base
        assert cache_key("gpt-4", 0.7, "prompt") != base
        assert cache_key("gpt-4", 0.0, "prompt ") != base


class TestResponseCache:
    """Tests for ResponseCache."""

    def test_put_get(self, tmp_path):
        cache = ResponseCache(tmp_path / "cache")
        cache.put("abc", "['Raucher', 'Lunge'] ✓")
        assert cache.get("abc") == "['Raucher', 'Lunge'] ✓"
        assert [p.name for p in (tmp_path / "cache").iterdir()] == ["abc"]

    def test_miss(self, tmp_path):
        assert ResponseCache(tmp_path).get("missing") is None

    def test_overwrite(self, tmp_path):
        cache = ResponseCache(tmp_path)
        cache.put("k", "old")
        cache.put("k", "new")
        assert cache.get("k") == "new"


class TestCachedComplete:
    """Tests for cached_complete and CachedCompleter."""

    def test_offline_miss(self, tmp_path):
        client = Mock()
        with pytest.raises(CacheMissError) as exc_info:
            cached_complete(client, "p", ResponseCache(tmp_path), "gpt-4")
        assert exc_info.value.key == cache_key("gpt-4", 0.0, "p")
        assert "--online" in str(exc_info.value)
        client.complete.assert_not_called()

    def test_hit_never_touches_client(self, tmp_path):
        cache = ResponseCache(tmp_path)
        cache.put(cache_key("gpt-4", 0.0, "p"), "cached")
        client = Mock()
        assert cached_complete(client, "p", cache, "gpt-4", online=True) == "cached"
        client.complete.assert_not_called()

    def test_online_miss_fetches_and_stores(self, tmp_path):
        cache = ResponseCache(tmp_path)
        client = Mock()
        client.complete.return_value = "fresh"
        assert cached_complete(client, "p", cache, "gpt-4", online=True) == "fresh"
        assert cache.get(cache_key("gpt-4", 0.0, "p")) == "fresh"

    def test_online_without_client(self, tmp_path):
        with pytest.raises(LlmAPIError, match="no completion client"):
            cached_complete(None, "p", ResponseCache(tmp_path), "gpt-4", online=True)

    def test_completer_records_keys(self, tmp_path):
        cache = ResponseCache(tmp_path)
        cache.put(cache_key("m", 0.0, "a"), "A")
        cache.put(cache_key("m", 0.0, "b"), "B")
        completer = CachedCompleter(cache, "m")
        assert [completer.complete("a"), completer.complete("b")] == ["A", "B"]
        assert completer.keys == [cache_key("m", 0.0, "a"), cache_key("m", 0.0, "b")]
