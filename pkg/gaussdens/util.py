"""Small generic utilities."""
import logging
import os
from typing import Any

import numpy as np
from numpy.typing import NDArray


logger = logging.getLogger(__name__)


FloatArray = NDArray[np.float64]


THREADS_VARIABLE = 'GAUSSDENS_THREADS'


def worker_count() -> int:
    """Return the number of worker threads to use.

    This is the value of the GAUSSDENS_THREADS environment variable if
    it is set to a positive integer, or the number of CPUs otherwise.
    """
    default = os.cpu_count() or 1
    setting = os.environ.get(THREADS_VARIABLE)
    if setting is None:
        return default
    try:
        count = int(setting)
    except ValueError:
        logger.warning(
                f'Ignoring invalid {THREADS_VARIABLE}={setting!r}')
        return default
    return max(1, count)


def as_point(value: Any, dimension: int) -> FloatArray:
    """Convert a sequence to a read-only point of a given dimension.

    Args:
        value: Something numpy can turn into a 1D float array.
        dimension: Required number of coordinates.

    Raises:
        ValueError: If the value has the wrong shape or is not finite.
    """
    point = np.array(value, dtype=float).reshape(-1)
    if point.shape != (dimension,):
        raise ValueError(
                f'Expected a point with {dimension} coordinates, got'
                f' {point.shape[0]}')
    if not np.all(np.isfinite(point)):
        raise ValueError(f'Point {point} is not finite')
    point.flags.writeable = False
    return point
