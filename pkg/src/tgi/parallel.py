"""Deterministic slice-parallel map helper.

Per-slice work in the transform domain is independent; results are always
assembled in slice order, so output is identical for any worker count.
"""

from concurrent.futures import ThreadPoolExecutor


def map_slices(fn, count: int, threads: int = 1) -> list:
    """Apply ``fn(i)`` for i in range(count), optionally on a thread pool."""
    if threads <= 1 or count <= 1:
        return [fn(i) for i in range(count)]
    with ThreadPoolExecutor(max_workers=min(threads, count)) as pool:
        futures = [pool.submit(fn, i) for i in range(count)]
        return [f.result() for f in futures]
