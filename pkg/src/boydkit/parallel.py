"""Order-preserving parallel map, capped by ``BOYDKIT_THREADS`` (0 = auto)."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor


def thread_count() -> int:
    raw = os.environ.get("BOYDKIT_THREADS", "0").strip() or "0"
    try:
        n = int(raw)
    except ValueError:
        raise ValueError(f"BOYDKIT_THREADS must be an integer, got {raw!r}") from None
    if n < 0:
        raise ValueError("BOYDKIT_THREADS must be >= 0")
    return n or (os.cpu_count() or 1)


def pmap(fn, items):
    """``[fn(x) for x in items]``, possibly on worker threads; order is kept."""
    items = list(items)
    n = min(thread_count(), len(items))
    if n <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))
