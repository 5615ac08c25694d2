"""One-dimensional searches."""
import math
from typing import Callable, NamedTuple

import numpy as np

from gaussdens.util import FloatArray


INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0      # 1 / phi
INV_PHI_SQUARE = (3.0 - math.sqrt(5.0)) / 2.0   # 1 / phi^2


class SearchResult(NamedTuple):
    """Result of a one-dimensional search."""
    x: float
    value: float
    evaluations: int


def golden_section_maximize(
        f: Callable[[float], float], a: float, b: float,
        tol: float = 1e-7) -> SearchResult:
    """Golden-section search for the maximum of a unimodal function.

    Given a function f with a single local maximum in the interval
    [a, b], this shrinks the interval until it is shorter than tol and
    returns the best point evaluated.

    Args:
        f: Function to maximize.
        a: One end of the interval.
        b: The other end.
        tol: Length of the final interval.
    """
    a, b = min(a, b), max(a, b)
    h = b - a
    if h <= tol:
        x = 0.5 * (a + b)
        return SearchResult(x, f(x), 1)

    steps = int(math.ceil(math.log(tol / h) / math.log(INV_PHI)))

    c = a + INV_PHI_SQUARE * h
    d = a + INV_PHI * h
    yc = f(c)
    yd = f(d)
    evaluations = 2

    for _ in range(steps - 1):
        if yc > yd:
            b = d
            d, yd = c, yc
            h = INV_PHI * h
            c = a + INV_PHI_SQUARE * h
            yc = f(c)
        else:
            a = c
            c, yc = d, yd
            h = INV_PHI * h
            d = a + INV_PHI * h
            yd = f(d)
        evaluations += 1

    if yc > yd:
        return SearchResult(c, yc, evaluations)
    return SearchResult(d, yd, evaluations)


def log_grid(low: float, high: float, count: int) -> FloatArray:
    """Return count points spaced evenly in log between low and high."""
    return np.asarray(np.exp(np.linspace(np.log(low), np.log(high), count)))
