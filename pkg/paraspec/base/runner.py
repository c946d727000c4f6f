"""Bounded concurrent execution of blocking numerical tasks."""

import asyncio
import logging
import os
from collections.abc import Callable, Iterable
from typing import ParamSpec, TypeVar

from paraspec.base.exceptions import ErrorDetail, SpectralError

P = ParamSpec("P")
T = TypeVar("T")
R = TypeVar("R")

logger = logging.getLogger(__name__)


def default_workers() -> int:
    return os.cpu_count() or 1


class TaskRunner:
    """
    Runs independent blocking tasks (dense eigensolves, sparse solves) on worker threads.

    numpy and scipy release the GIL inside LAPACK, so threads give real parallelism here.
    Results always come back in submission order, whatever the degree of parallelism.
    """

    def __init__(self, workers: int | None = None):
        """
        :param workers: Maximum number of tasks running at once, defaults to the number of cores.
        """
        self.workers = max(1, workers or default_workers())
        self.semaphore: asyncio.Semaphore | None = None

    def _get_semaphore(self) -> asyncio.Semaphore:
        # bound lazily, the semaphore must belong to the running event loop
        if self.semaphore is None:
            self.semaphore = asyncio.Semaphore(self.workers)
        return self.semaphore

    async def run(self, func: Callable[P, T], *args: P.args, **kwargs: P.kwargs) -> T:
        async with self._get_semaphore():
            return await asyncio.to_thread(func, *args, **kwargs)

    async def run_guarded(
        self, func: Callable[P, T], *args: P.args, **kwargs: P.kwargs
    ) -> T | ErrorDetail:
        """
        Run the task and return the ErrorDetail instead of raising when it fails with a SpectralError.

        Any other exception is a programming error and propagates.
        """
        try:
            return await self.run(func, *args, **kwargs)
        except SpectralError as e:
            logger.warning("Task %s failed: %s", getattr(func, "__name__", func), e.error.message)
            return e.error

    async def map_guarded(self, func: Callable[[T], R], items: Iterable[T]) -> list[R | ErrorDetail]:
        """run_guarded over every item, concurrently, results in item order."""
        tasks = [asyncio.create_task(self.run_guarded(func, item)) for item in items]
        return list(await asyncio.gather(*tasks))
