from __future__ import annotations

import time
from collections import OrderedDict
from hashlib import sha256
from typing import Any, Callable, Hashable

from app.core.config import settings

_MISSING = object()


class TTLCache:
    """In-memory LRU with TTL (seconds) for computed results."""

    def __init__(self, maxsize: int = 128, ttl: float = 3600.0, clock: Callable[[], float] = time.monotonic):
        self.maxsize = maxsize
        self.ttl = ttl
        self.clock = clock
        self.hits = 0
        self.misses = 0
        self._data: OrderedDict[Hashable, tuple[float, Any]] = OrderedDict()

    def __len__(self) -> int:
        return len(self._data)

    def get(self, key: Hashable, default: Any = None) -> Any:
        item = self._data.get(key)
        if item is None:
            return default
        expiry, value = item
        if expiry < self.clock():
            self._data.pop(key, None)
            return default
        self._data.move_to_end(key)
        return value

    def set(self, key: Hashable, value: Any) -> None:
        self._data[key] = (self.clock() + self.ttl, value)
        self._data.move_to_end(key)
        while len(self._data) > self.maxsize:
            self._data.popitem(last=False)

    def get_or_set(self, key: Hashable, factory: Callable[[], Any]) -> Any:
        existing = self.get(key, _MISSING)
        if existing is not _MISSING:
            self.hits += 1
            return existing
        self.misses += 1
        value = factory()
        self.set(key, value)
        return value

    def clear(self) -> None:
        self._data.clear()
        self.hits = self.misses = 0


def make_cache_key(prefix: str, *parts: Hashable) -> str:
    """Stable hashed key: operation name plus its parameters."""
    raw = "|".join("" if p is None else str(p) for p in (prefix, *parts))
    digest = sha256(raw.encode("utf-8")).hexdigest()
    return f"{prefix}:{digest}"


result_cache = TTLCache(maxsize=settings.cache_maxsize, ttl=settings.cache_ttl_seconds)


def cached(prefix: str, *parts: Hashable, factory: Callable[[], Any]) -> Any:
    return result_cache.get_or_set(make_cache_key(prefix, *parts), factory)
