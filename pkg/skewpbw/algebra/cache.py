import logging
import threading
from collections import OrderedDict
from typing import Any, Dict, Hashable, Optional

logger = logging.getLogger(__name__)

_MISSING = object()


class ProductCache:
    """Thread-safe LRU memo for rewriting results keyed by hashable tuples."""

    def __init__(self, name: str, max_size: int):
        self.name = name
        self.max_size = max_size
        self._cache: OrderedDict = OrderedDict()
        self._lock = threading.Lock()
        self.hits = 0
        self.misses = 0

    def get(self, key: Hashable) -> Optional[Any]:
        with self._lock:
            value = self._cache.get(key, _MISSING)
            if value is _MISSING:
                self.misses += 1
                return None
            self._cache.move_to_end(key)
            self.hits += 1
            return value

    def set(self, key: Hashable, value: Any) -> None:
        with self._lock:
            self._cache[key] = value
            self._cache.move_to_end(key)
            while len(self._cache) > self.max_size:
                self._cache.popitem(last=False)

    def __len__(self) -> int:
        return len(self._cache)

    def stats(self) -> Dict[str, Any]:
        return {"name": self.name, "size": len(self._cache), "hits": self.hits, "misses": self.misses}
