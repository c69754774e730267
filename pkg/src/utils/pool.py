"""Order-preserving worker pool for per-pattern work."""

from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, Optional, TypeVar

T = TypeVar("T")
R = TypeVar("R")


def parallel_map(
    func: Callable[[T], R],
    items: Iterable[T],
    workers: Optional[int] = None,
    chunksize: int = 1,
) -> list[R]:
    """Apply ``func`` to every item, distributing over processes when it pays off.

    Args:
        func: A picklable top-level callable.
        items: Inputs; consumed eagerly.
        workers: Maximum number of processes. ``None`` or ``1`` runs in-process.
        chunksize: Items sent to a worker per task.

    Returns:
        Results in input order.
    """
    items = list(items)
    if not workers or workers <= 1 or len(items) <= 1:
        return [func(item) for item in items]

    with ProcessPoolExecutor(max_workers=min(workers, len(items))) as executor:
        return list(executor.map(func, items, chunksize=chunksize))
