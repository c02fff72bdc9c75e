from __future__ import annotations

from collections.abc import Callable, Sequence
from concurrent.futures import ProcessPoolExecutor, as_completed
from typing import Any

from ..logging import get_logger

logger = get_logger(__name__)


def chunk_ranges(n: int, chunk_size: int) -> list[range]:
    return [range(start, min(start + chunk_size, n)) for start in range(0, n, chunk_size)]


class RealizationExecutor:
    """Map independent chunks of disorder realizations over a process pool.

    ``max_workers == 1`` runs in the calling process. With ``ordered`` the results come
    back in task order, so a subsequent reduction does not depend on completion order.
    """

    def __init__(self, max_workers: int | None = 1, ordered: bool = True):
        self.max_workers = max_workers
        self.ordered = ordered

    def map(self, fn: Callable[..., Any], tasks: Sequence[tuple]) -> list[Any]:
        results: list[Any] = []

        if self.max_workers == 1 or len(tasks) <= 1:
            for args in tasks:
                results.append(fn(*args))
            return results

        slots: list[Any] = [None] * len(tasks)
        with ProcessPoolExecutor(max_workers=self.max_workers) as executor:
            future_to_index = {executor.submit(fn, *args): i for i, args in enumerate(tasks)}
            for future in as_completed(future_to_index):
                index = future_to_index[future]
                if self.ordered:
                    slots[index] = future.result()
                else:
                    results.append(future.result())
                logger.debug("chunk finished", extra={"chunk": index, "n_chunks": len(tasks)})

        return slots if self.ordered else results
