"""Shared helpers: worker-count resolution and a process-pool map."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Sequence

WORKERS_ENV = "ODDSTAB_WORKERS"


def worker_count() -> int:
    raw = os.environ.get(WORKERS_ENV)
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            pass
    return max(1, os.cpu_count() or 1)


def parallel_map(fn: Callable, items: Sequence, workers: int | None = None) -> list:
    """Order-preserving map, fanned out over processes when beneficial.

    Falls back to a plain map for a single worker, tiny inputs, or pool
    failures (sandboxed environments without fork).
    """
    items = list(items)
    w = worker_count() if workers is None else max(1, workers)
    if w <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    try:
        with ProcessPoolExecutor(max_workers=min(w, len(items))) as pool:
            return list(pool.map(fn, items))
    except Exception:
        return [fn(x) for x in items]
