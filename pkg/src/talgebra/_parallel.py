"""Thread-pool helpers for slice-wise work.

Fourier slices are independent, so slice ranges can be handed to worker
threads freely; every worker writes to a disjoint pre-allocated output region,
which keeps results identical for any degree of parallelism.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

ENV_THREADS = "TALGEBRA_THREADS"


def resolve_parallelism(explicit: int | None = None) -> int:
    """Degree of slice parallelism: explicit argument, else TALGEBRA_THREADS, else CPU count."""
    if explicit is not None:
        n = int(explicit)
        if n < 1:
            raise ValueError(f"parallelism must be >= 1, got {n}")
        return n
    env = os.environ.get(ENV_THREADS)
    if env:
        try:
            n = int(env)
        except ValueError:
            raise ValueError(f"{ENV_THREADS} must be an integer, got {env!r}") from None
        if n >= 1:
            return n
    return os.cpu_count() or 1


def slice_ranges(n_slices: int, n_chunks: int) -> list[tuple[int, int]]:
    n_chunks = max(1, min(n_chunks, n_slices))
    step = -(-n_slices // n_chunks)
    return [(lo, min(lo + step, n_slices)) for lo in range(0, n_slices, step)]


def map_slice_ranges(fn, n_slices: int, parallelism: int | None = None) -> None:
    """Run ``fn(lo, hi)`` over a partition of range(n_slices), possibly on threads.

    ``fn`` must only write to output regions determined by its range, so the
    result does not depend on scheduling.
    """
    degree = resolve_parallelism(parallelism)
    ranges = slice_ranges(n_slices, degree)
    if degree == 1 or len(ranges) == 1:
        for lo, hi in ranges:
            fn(lo, hi)
        return
    with ThreadPoolExecutor(max_workers=degree) as pool:
        futures = [pool.submit(fn, lo, hi) for lo, hi in ranges]
        for fut in futures:
            fut.result()
