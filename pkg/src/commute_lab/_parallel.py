"""Deterministic partition/merge helpers for the counting loops.

Work is split into contiguous chunks, each chunk is reduced to a bucket map,
and partial maps are merged in chunk order.  Exact addition is associative
and commutative, so the merged result does not depend on how many workers
ran or in which order they finished.
"""

from __future__ import annotations

import atexit
from concurrent.futures import ProcessPoolExecutor
from typing import Any, Callable, Sequence, TypeVar

T = TypeVar("T")

# One pool per worker count, reused across calls: the engines are called
# thousands of times by the suites and a fresh pool per call dominates.
_POOLS: dict[int, ProcessPoolExecutor] = {}


def _pool(workers: int) -> ProcessPoolExecutor:
    pool = _POOLS.get(workers)
    if pool is None:
        pool = _POOLS[workers] = ProcessPoolExecutor(max_workers=workers)
    return pool


@atexit.register
def shutdown_pools() -> None:
    for pool in _POOLS.values():
        pool.shutdown(wait=True)
    _POOLS.clear()


def chunks(items: Sequence[T], n: int) -> list[Sequence[T]]:
    n = max(1, min(n, len(items)))
    size, extra = divmod(len(items), n)
    out = []
    start = 0
    for i in range(n):
        stop = start + size + (1 if i < extra else 0)
        out.append(items[start:stop])
        start = stop
    return out


def map_chunks(fn: Callable[..., Any], items: Sequence[T], threads: int, *args: Any) -> list[Any]:
    """Apply ``fn(chunk, *args)`` to ``threads`` contiguous chunks of ``items``.

    ``fn`` must be a module-level function when ``threads > 1`` since chunks
    run in worker processes.
    """
    parts = chunks(items, threads)
    if threads <= 1 or len(parts) <= 1:
        return [fn(p, *args) for p in parts]
    pool = _pool(threads)
    futures = [pool.submit(fn, p, *args) for p in parts]
    return [f.result() for f in futures]


def merge_counts(parts: Sequence[dict]) -> dict:
    out: dict = {}
    for part in parts:
        for k, v in part.items():
            out[k] = out.get(k, 0) + v
    return out
