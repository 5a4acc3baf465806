"""Task runner abstraction for fanning work out over periods and replicates."""

from __future__ import annotations

import logging
from abc import ABC, abstractmethod
from concurrent.futures import ProcessPoolExecutor
from typing import TYPE_CHECKING, Any, TypeVar

from ._config import DEFAULT_WORKERS

if TYPE_CHECKING:
    from collections.abc import Callable, Iterable

T = TypeVar("T")
R = TypeVar("R")

logger = logging.getLogger(__name__)


class TaskRunner(ABC):
    """Abstract base class for task runners.

    ``map`` must return results in input order; callers rely on this for
    deterministic reductions.
    """

    @abstractmethod
    def map(self, fn: Callable[[T], R], items: Iterable[T]) -> list[R]:
        """Apply ``fn`` to every item and return results in input order."""
        pass

    @abstractmethod
    def close(self) -> None:
        """Release any worker resources."""
        pass

    @property
    @abstractmethod
    def workers(self) -> int:
        """Number of workers."""
        pass

    def __enter__(self) -> TaskRunner:
        return self

    def __exit__(self, *args: Any) -> None:
        self.close()


class SerialRunner(TaskRunner):
    """Runs every task in the calling process."""

    def map(self, fn: Callable[[T], R], items: Iterable[T]) -> list[R]:
        return [fn(item) for item in items]

    def close(self) -> None:
        pass

    @property
    def workers(self) -> int:
        return 1


class ProcessPoolRunner(TaskRunner):
    """Runs tasks on a lazily created process pool.

    Task functions and their arguments must be picklable (module-level
    functions and plain data).
    """

    def __init__(self, *, workers: int = DEFAULT_WORKERS) -> None:
        self._workers = max(1, workers)
        self._pool: ProcessPoolExecutor | None = None

    def _get_pool(self) -> ProcessPoolExecutor:
        """Get or create the process pool."""
        if self._pool is None:
            logger.debug("Starting process pool with %d workers", self._workers)
            self._pool = ProcessPoolExecutor(max_workers=self._workers)
        return self._pool

    def map(self, fn: Callable[[T], R], items: Iterable[T]) -> list[R]:
        materialized = list(items)
        if len(materialized) <= 1:
            return [fn(item) for item in materialized]
        return list(self._get_pool().map(fn, materialized))

    def close(self) -> None:
        if self._pool is not None:
            self._pool.shutdown()
            self._pool = None

    @property
    def workers(self) -> int:
        return self._workers


def make_runner(workers: int = DEFAULT_WORKERS) -> TaskRunner:
    """Serial runner for one worker, process pool otherwise."""
    if workers <= 1:
        return SerialRunner()
    return ProcessPoolRunner(workers=workers)
