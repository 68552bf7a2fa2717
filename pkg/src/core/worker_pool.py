"""
Thread pool used to fan out independent numeric jobs.
NumPy and SciPy release the GIL inside BLAS/LAPACK, so threads scale for the
dense kernels this library runs.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, Optional, TypeVar

from src.config import settings

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


class WorkerPool:
    """Ordered map over a bounded ThreadPoolExecutor."""

    def __init__(self, max_workers: Optional[int] = None):
        self.max_workers = max_workers or settings.max_workers

    def map(self, func: Callable[[T], R], items: Iterable[T]) -> List[R]:
        """Apply func to every item and return results in input order."""
        items = list(items)
        if self.max_workers == 1 or len(items) <= 1:
            return [func(item) for item in items]

        logger.debug(f"Dispatching {len(items)} jobs to {self.max_workers} workers")
        with ThreadPoolExecutor(max_workers=self.max_workers) as executor:
            return list(executor.map(func, items))


def parallel_map(func: Callable[[T], R], items: Iterable[T], max_workers: Optional[int] = None) -> List[R]:
    """Convenience wrapper around WorkerPool.map."""
    return WorkerPool(max_workers).map(func, items)
