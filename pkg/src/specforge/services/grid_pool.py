"""
Grid Pool

Fans grid evaluations (Q values, transforms) out to worker threads.
Results always come back in input order, so output is identical for any
thread count.
"""

from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, Optional, TypeVar
import logging
import os

from specforge.core.config import settings

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


class GridPool:
    """
    Ordered map over a thread pool

    - `threads=1` runs inline without starting an executor
    - usable as a context manager; `close()` shuts the executor down
    """

    def __init__(self, threads: Optional[int] = None):
        threads = threads if threads is not None else settings.threads
        self.threads = max(1, threads or os.cpu_count() or 1)
        self._executor: Optional[ThreadPoolExecutor] = None
        self.tasks_run = 0

    def __enter__(self) -> "GridPool":
        return self

    def __exit__(self, *exc):
        self.close()

    def _ensure_executor(self) -> ThreadPoolExecutor:
        if self._executor is None:
            self._executor = ThreadPoolExecutor(max_workers=self.threads, thread_name_prefix="specforge-grid")
            logger.debug(f"Started grid pool with {self.threads} threads")
        return self._executor

    def map(self, fn: Callable[[T], R], items: Iterable[T]) -> List[R]:
        """Apply fn to every item; exceptions propagate from the first failing item"""
        items = list(items)
        self.tasks_run += len(items)
        if self.threads == 1 or len(items) < 2:
            return [fn(x) for x in items]
        return list(self._ensure_executor().map(fn, items))

    def close(self):
        if self._executor is not None:
            self._executor.shutdown(wait=True)
            self._executor = None
            logger.debug(f"Grid pool closed after {self.tasks_run} tasks")
