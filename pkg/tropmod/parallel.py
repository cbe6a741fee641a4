import logging
import os
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, TypeVar

logger = logging.getLogger(__name__)

T = TypeVar('T')
R = TypeVar('R')


def resolve_jobs(jobs: int) -> int:
    """0 or a negative count means one worker per CPU"""
    if jobs is None or jobs <= 0:
        return os.cpu_count() or 1
    return jobs


def parallel_map(func: Callable[[T], R], items: Iterable[T], jobs: int = 1, chunksize: int = 64) -> list[R]:
    """Map `func` over `items`, results in input order; serial when jobs <= 1"""
    items = list(items)
    if jobs <= 1 or len(items) < 2:
        return [func(item) for item in items]
    workers = min(jobs, len(items))
    logger.debug('mapping %s over %d items with %d workers', getattr(func, '__name__', func), len(items), workers)
    with ProcessPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(func, items, chunksize=max(1, min(chunksize, len(items) // workers))))
