"""
Order-preserving parallel map.

Work is split into fixed chunks whose boundaries do not depend on the
worker count, so results are identical for any BERGMAN_THREADS value.
"""

from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, Sequence, TypeVar

from config import RuntimeConfig

T = TypeVar("T")
R = TypeVar("R")


def ordered_map(fn: Callable[[T], R], items: Iterable[T]) -> List[R]:
    """Apply ``fn`` to every item, returning results in input order."""
    items = list(items)
    threads = RuntimeConfig.get_threads()
    if threads <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=min(threads, len(items))) as pool:
        return list(pool.map(fn, items))


def chunk_ranges(total: int, size: int) -> Sequence[range]:
    """Fixed-size index chunks covering ``range(total)``."""
    return [range(start, min(start + size, total)) for start in range(0, total, size)]
