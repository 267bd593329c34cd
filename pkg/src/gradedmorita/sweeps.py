"""Partitionable verification sweeps with deterministic aggregation."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Optional, TypeVar

V = TypeVar("V", bound=tuple)


def scan_chunks(total: int, worker: Callable[[int, int], Optional[V]], jobs: int = 1) -> Optional[V]:
    """Scan range(total) for the first violation, optionally in parallel chunks.

    `worker(lo, hi)` scans positions [lo, hi) and returns either None or a
    tuple whose first element is the global position of the violation it hit
    first.  With jobs > 1 the range is split into fixed chunks and the
    violation with the smallest position wins, so the reported witness is
    identical for every job count.
    """
    if total <= 0:
        return None
    jobs = max(1, min(jobs, total))
    if jobs == 1:
        return worker(0, total)
    bounds = [total * k // jobs for k in range(jobs + 1)]
    hits: list[V] = []
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        futures = [pool.submit(worker, bounds[k], bounds[k + 1]) for k in range(jobs)]
        for fut in futures:
            result = fut.result()
            if result is not None:
                hits.append(result)
    if not hits:
        return None
    return min(hits, key=lambda v: v[0])
