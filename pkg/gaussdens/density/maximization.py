"""Maximizing the Huisken functional over centers and scales.

sigma(curve, tau) is the largest Huisken functional over all centers,
nu(curve) the largest sigma over all scales. The center search works
in coordinates relative to the curve's centroid measured in units of
sqrt(tau), which makes it exactly equivariant under rescaling and
rigid motions of the curve, up to roundoff.
"""
from concurrent.futures import ThreadPoolExecutor
import logging
from typing import Any, Dict, List, NamedTuple, Optional, Sequence

import numpy as np
from scipy.optimize import minimize

from gaussdens.definitions.geometry import DiscreteCurve
from gaussdens.definitions.kernels import KernelParams
from gaussdens.definitions.reports import DensityReport
from gaussdens.density.huisken import (
        huisken_functional, length_bound, shrinker_residual)
from gaussdens.density.search import golden_section_maximize, log_grid
from gaussdens.geometry.quadrature import CurveQuadrature
from gaussdens.util import FloatArray, worker_count


logger = logging.getLogger(__name__)


class SearchOptions:
    """Settings for the center and scale searches.

    Attributes:
        grid: Starting points per axis of the grid over the bounding
            box.
        restarts: Extra random starting points on top of the grid.
        seed: Seed for the random starting points.
        order: Gauss-Legendre nodes per edge.
        gtol: Gradient tolerance of the local ascent.
        tie_tolerance: Relative difference below which two maxima are
            considered equal.
        scale_points: Number of scales in the coarse scan for nu.
        scale_tol: Tolerance in log(tau) of the scale search.
    """
    def __init__(
            self, grid: int = 5, restarts: int = 0, seed: int = 0,
            order: int = 4, gtol: float = 1e-10,
            tie_tolerance: float = 1e-12, scale_points: int = 25,
            scale_tol: float = 1e-7) -> None:
        """Create SearchOptions.

        Raises:
            ValueError: If a value is out of range.
        """
        if grid < 1:
            raise ValueError(f'Grid must have at least 1 point, got {grid}')
        if restarts < 0:
            raise ValueError(f'Restarts must be >= 0, got {restarts}')
        if not 1 <= order <= 10:
            raise ValueError(f'Quadrature order must be in 1..10, got {order}')
        if scale_points < 3:
            raise ValueError(
                    f'Need at least 3 scales to bracket, got {scale_points}')
        self.grid = grid
        self.restarts = restarts
        self.seed = seed
        self.order = order
        self.gtol = gtol
        self.tie_tolerance = tie_tolerance
        self.scale_points = scale_points
        self.scale_tol = scale_tol


class _LocalResult(NamedTuple):
    position: FloatArray
    value: float
    iterations: int
    converged: bool


class _NormalizedObjective:
    """The Huisken functional in normalized coordinates.

    Positions are q = (x - origin) / sqrt(tau), so the Gaussian
    becomes exp(-|q - r|^2 / 4) for a center r.
    """
    def __init__(
            self, rule: CurveQuadrature, origin: FloatArray, tau: float
            ) -> None:
        self.points = (rule.points - origin) / np.sqrt(tau)
        self.weights = rule.weights / np.sqrt(4.0 * np.pi * tau)

    def value(self, r: FloatArray) -> float:
        squared = np.sum((self.points - r)**2, axis=1)
        return float(self.weights @ np.exp(-0.25 * squared))

    def gradient(self, r: FloatArray) -> FloatArray:
        offsets = self.points - r
        kernel = self.weights * np.exp(-0.25 * np.sum(offsets**2, axis=1))
        return np.asarray(0.5 * kernel @ offsets)

    def negative(self, r: FloatArray) -> float:
        return -self.value(r)

    def negative_gradient(self, r: FloatArray) -> FloatArray:
        return -self.gradient(r)


def _ascend(
        objective: _NormalizedObjective, start: FloatArray, gtol: float
        ) -> _LocalResult:
    """Climb from a start with BFGS, then polish with Nelder-Mead."""
    result = minimize(
            objective.negative, start, jac=objective.negative_gradient,
            method='BFGS', options={'gtol': gtol, 'maxiter': 500})
    position, value = result.x, -float(result.fun)
    iterations = int(result.nit)

    polish = minimize(
            objective.negative, position, method='Nelder-Mead',
            options={
                'xatol': 1e-11, 'fatol': 1e-16, 'maxiter': 400,
                'initial_simplex': position + 1e-4 * np.array(
                    [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]])})
    iterations += int(polish.nit)
    if -float(polish.fun) > value:
        position, value = polish.x, -float(polish.fun)

    slope = float(np.linalg.norm(objective.gradient(position)))
    converged = slope <= 1e-6 * max(value, 1e-300) + 1e-12
    return _LocalResult(np.asarray(position), value, iterations, converged)


def _starting_points(
        curve: DiscreteCurve, origin: FloatArray, tau: float,
        options: SearchOptions, extra: Sequence[Any]) -> List[FloatArray]:
    """Return normalized starting points for the center search.

    These are the centroid, a grid over the bounding box inflated by
    2 sqrt(tau), seeded random points in the same box and any extra
    points given, in that order.
    """
    root = np.sqrt(tau)
    low, high = curve.bounding_box()
    low = (low - origin) / root - 2.0
    high = (high - origin) / root + 2.0

    starts = [np.zeros(2)]
    xs = np.linspace(low[0], high[0], options.grid)
    ys = np.linspace(low[1], high[1], options.grid)
    starts.extend(np.array([x, y]) for x in xs for y in ys)

    rng = np.random.default_rng(options.seed)
    starts.extend(rng.uniform(low, high, size=(options.restarts, 2)))
    starts.extend((np.asarray(p, dtype=float) - origin) / root for p in extra)
    return starts


def _pick(
        results: Sequence[_LocalResult], tie_tolerance: float
        ) -> _LocalResult:
    """Choose the best local result deterministically.

    Among the results within tie_tolerance of the best value, the one
    closest to the centroid wins, then the earliest one.
    """
    best = max(result.value for result in results)
    threshold = best - tie_tolerance * abs(best)
    candidates = [result for result in results if result.value >= threshold]
    return min(
            candidates,
            key=lambda result: float(np.linalg.norm(result.position)))


def sigma(
        curve: DiscreteCurve, tau: float,
        options: Optional[SearchOptions] = None,
        hints: Sequence[Any] = ()) -> DensityReport:
    """Maximize the Huisken functional over centers.

    Local ascents from all starting points run in parallel, with up
    to GAUSSDENS_THREADS workers; the reduction over them does not
    depend on the order in which they finish.

    Args:
        curve: The curve.
        tau: The scale.
        options: Search settings, defaults if not given.
        hints: Extra starting centers, e.g. the maximizer found for a
            nearby curve.

    Return:
        The maximum and its center. If the best local search did not
        converge, the report is flagged.

    Raises:
        ValueError: If tau is not positive.
    """
    if not tau > 0.0:
        raise ValueError(f'Scale must be positive, got {tau}')
    if options is None:
        options = SearchOptions()

    origin = curve.centroid()
    rule = CurveQuadrature(curve, options.order)
    objective = _NormalizedObjective(rule, origin, tau)
    starts = _starting_points(curve, origin, tau, options, hints)

    threads = min(worker_count(), len(starts))
    with ThreadPoolExecutor(max_workers=threads) as executor:
        results = list(executor.map(
                lambda start: _ascend(objective, start, options.gtol),
                starts))

    chosen = _pick(results, options.tie_tolerance)
    center = origin + np.sqrt(tau) * chosen.position
    params = KernelParams(center, tau)
    iterations = sum(result.iterations for result in results)

    fine = huisken_functional(curve, params, min(options.order + 2, 10))
    report = DensityReport(
            chosen.value, center, tau,
            residual=shrinker_residual(curve, params, options.order),
            iterations=iterations, starts=len(starts),
            converged=chosen.converged,
            quadrature_error=abs(fine - chosen.value),
            bound=length_bound(curve, tau))

    if not chosen.converged:
        report.flagged = True
        report.reason = 'center search did not converge'
        logger.warning(
                f'Center search at tau={tau} did not converge, best value'
                f' {chosen.value} at {center}')
    logger.debug(
            f'sigma(tau={tau}) = {report.value} at {center.tolist()} from'
            f' {len(starts)} starts')
    return report


def nu(curve: DiscreteCurve, options: Optional[SearchOptions] = None
       ) -> DensityReport:
    """Maximize sigma over the scale.

    The search scans a logarithmic grid of scales between
    tau_lo = (2 max edge)^2, below which the quadrature no longer
    resolves the Gaussian, and tau_hi, above which the length bound
    L / sqrt(4 pi tau) is below half of sigma at tau_lo. Sigma never
    exceeds the bound and the maximum is at least sigma(tau_lo), so
    no scale above tau_hi can hold it. The best grid point is then
    refined by golden-section search in log(tau).

    Args:
        curve: The curve.
        options: Search settings, defaults if not given.

    Return:
        The maximum with maximizing scale and center. The report is
        flagged if the bracket is empty or the maximum lies on its
        boundary.
    """
    if options is None:
        options = SearchOptions()

    tau_lo = (2.0 * float(np.max(curve.edge_lengths())))**2
    first = sigma(curve, tau_lo, options)
    tau_hi = curve.length()**2 / (4.0 * np.pi * (0.5 * first.value)**2)

    if not tau_hi > tau_lo:
        logger.warning(
                f'Empty scale bracket [{tau_lo}, {tau_hi}] for nu')
        first.flagged = True
        first.reason = 'empty scale bracket'
        return first

    taus = log_grid(tau_lo, tau_hi, options.scale_points)
    reports = [first] + [sigma(curve, tau, options) for tau in taus[1:]]
    values = np.array([report.value for report in reports])
    peak = int(np.argmax(values))

    on_edge = peak in (0, len(taus) - 1)
    low = np.log(taus[max(peak - 1, 0)])
    high = np.log(taus[min(peak + 1, len(taus) - 1)])
    hint = [reports[peak].center]

    cache = dict()     # type: Dict[float, DensityReport]

    def objective(log_tau: float) -> float:
        report = sigma(curve, float(np.exp(log_tau)), options, hint)
        cache[log_tau] = report
        return report.value

    found = golden_section_maximize(objective, low, high, options.scale_tol)
    best = cache[found.x]
    if reports[peak].value > best.value:
        best = reports[peak]

    best.starts = sum(report.starts for report in reports) + sum(
            report.starts for report in cache.values())
    if on_edge:
        best.flagged = True
        best.reason = 'maximum on the edge of the scale bracket'
        logger.warning(
                f'nu search: maximum at the bracket edge tau={best.tau}')
    logger.info(f'nu = {best.value} at tau={best.tau}')
    return best


def sigma_profile(
        curve: DiscreteCurve, taus: Sequence[float],
        options: Optional[SearchOptions] = None) -> List[DensityReport]:
    """Compute sigma at a sequence of scales.

    Each search also starts from the maximizer at the previous scale.
    """
    reports = list()    # type: List[DensityReport]
    for tau in taus:
        hints = [reports[-1].center] if reports else []
        reports.append(sigma(curve, tau, options, hints))
    return reports


