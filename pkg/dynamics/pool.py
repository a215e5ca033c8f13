"""Replica-parallel execution with an ordered reduction."""

from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Optional

import numpy as np

from core.config import get_settings
from core.logging import get_logger

logger = get_logger(__name__)

ChunkResult = dict[str, np.ndarray]


def split_replicas(replicas: int, workers: int) -> list[np.ndarray]:
    """Contiguous index chunks, at most one per worker."""
    chunks = max(1, min(workers, replicas))
    return [c for c in np.array_split(np.arange(replicas), chunks) if c.size]


def run_replicas(
    fn: Callable[[np.ndarray], ChunkResult],
    replicas: int,
    workers: Optional[int] = None,
) -> ChunkResult:
    """Run `fn` on replica chunks and concatenate its arrays along axis 0 in replica order.

    `fn` receives the global replica indices of its chunk and must return
    arrays whose leading axis runs over those replicas.
    """
    workers = workers or get_settings().workers
    chunks = split_replicas(replicas, workers)
    if len(chunks) == 1:
        results = [fn(chunks[0])]
    else:
        with ThreadPoolExecutor(max_workers=len(chunks)) as executor:
            results = list(executor.map(fn, chunks))
    logger.debug("replicas_completed", replicas=replicas, chunks=len(chunks))
    return {key: np.concatenate([r[key] for r in results], axis=0) for key in results[0]}
