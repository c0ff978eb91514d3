"""
Parallel helpers.
Reparto de trabajo independiente en hilos, con resultados en orden de entrada.
"""

from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, Sequence, TypeVar

from shared.domain.entities import require_positive

T = TypeVar('T')
R = TypeVar('R')


def parallel_map(func: Callable[[T], R], items: Sequence[T], threads: int = 1) -> List[R]:
    """func sobre cada elemento; con threads > 1 usa un pool acotado."""
    require_positive('threads', threads)
    if threads == 1 or len(items) <= 1:
        return [func(item) for item in items]
    with ThreadPoolExecutor(max_workers=min(threads, len(items))) as pool:
        return list(pool.map(func, items))


def split_ranges(total: int, parts: int) -> List[range]:
    """Partir [0, total) en a lo sumo `parts` rangos contiguos."""
    parts = max(1, min(parts, total))
    bounds = [total * k // parts for k in range(parts + 1)]
    return [range(bounds[k], bounds[k + 1]) for k in range(parts) if bounds[k] < bounds[k + 1]]
