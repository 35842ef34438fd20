import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Generic, List, Sequence, TypeVar

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


class ScanRunner(Generic[T, R]):
    """
    Runs the handler over a list of scan points and returns the results in input order.
    With a single worker everything runs in-process; otherwise points are distributed over a
    process pool, so the handler must be a picklable module-level callable. The handler is
    expected to turn failures into result records, an exception escaping it aborts the scan.
    """

    def __init__(self, handler: Callable[[T], R], worker_count: int = 1, name: str = "ScanRunner"):
        self._handler = handler
        self._worker_count = max(1, worker_count)
        self._name = name

    @property
    def worker_count(self) -> int:
        return self._worker_count

    def run(self, points: Sequence[T]) -> List[R]:
        logger.info(f"{self._name}: running {len(points)} points on {self._worker_count} worker(s)")
        if self._worker_count == 1 or len(points) <= 1:
            return [self._handler(point) for point in points]
        chunk_size = max(1, len(points) // (4 * self._worker_count))
        with ProcessPoolExecutor(max_workers=self._worker_count) as executor:
            return list(executor.map(self._handler, points, chunksize=chunk_size))
