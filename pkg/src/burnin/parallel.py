"""Order-deterministic replication batches.

Work is split into contiguous blocks of replication indices. Blocks may run in
worker processes, but results are always stacked in index order, so any
reduction over them is independent of the worker count.
"""

import os
from concurrent.futures import ProcessPoolExecutor
from functools import partial

import numpy as np


def default_workers() -> int:
    return os.cpu_count() or 1


def _blocks(n_sim: int, workers: int, block: int | None):
    if block is None:
        block = max(1, min(2000, -(-n_sim // (4 * workers))))
    return [(s, min(s + block, n_sim)) for s in range(0, n_sim, block)]


def _call(func, kwargs, bounds):
    return func(bounds[0], bounds[1], **kwargs)


def map_replications(func, n_sim: int, workers: int = 1, block: int | None = None, **kwargs) -> np.ndarray:
    """Run ``func(start, stop, **kwargs)`` over all blocks and stack the rows.

    ``func`` must be a module-level function returning an array with one row
    per replication in ``range(start, stop)``.
    """
    if n_sim < 1:
        raise ValueError("n_sim must be >= 1")
    workers = max(1, int(workers))
    blocks = _blocks(n_sim, workers, block)
    call = partial(_call, func, kwargs)
    if workers == 1 or len(blocks) == 1:
        parts = [call(bnd) for bnd in blocks]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(call, blocks))
    return np.concatenate(parts, axis=0)
