"""Order-preserving parallel map over a process pool."""

import os
from concurrent.futures import ProcessPoolExecutor

WORKERS_ENV = "RDSEMI_WORKERS"


def worker_count() -> int:
    raw = os.environ.get(WORKERS_ENV)
    if raw:
        return max(1, int(raw))
    return os.cpu_count() or 1


def pmap(fn, items, min_items=256):
    """``list(map(fn, items))``, fanned out when the batch is large enough."""
    items = list(items)
    workers = worker_count()
    if workers == 1 or len(items) < min_items:
        return [fn(x) for x in items]
    chunk = max(1, len(items) // (workers * 8))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items, chunksize=chunk))
