"""Bounded thread-pool mapping for independent work items.

The worker count comes from the ROPEBOUND_THREADS environment variable when
set (minimum 1), otherwise the CPU count.  Results preserve input order, so
parallel runs produce output identical to sequential ones.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

__all__ = ["thread_count", "parallel_map"]


def thread_count() -> int:
    env = os.environ.get("ROPEBOUND_THREADS")
    if env is not None:
        try:
            return max(1, int(env))
        except ValueError:
            raise ValueError(f"ROPEBOUND_THREADS must be an integer, got {env!r}")
    return os.cpu_count() or 1


def parallel_map(func, items, max_workers: int | None = None) -> list:
    """Apply `func` to every item, in order, using up to `max_workers`
    threads (default: thread_count())."""
    items = list(items)
    workers = min(thread_count() if max_workers is None else max_workers,
                  max(1, len(items)))
    if workers <= 1 or len(items) <= 1:
        return [func(it) for it in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, items))
