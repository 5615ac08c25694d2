"""Curve shortening flow of closed polygons.

Each step moves the vertices by the arc-length Laplacian of their
positions, treated implicitly with coefficients frozen at the start of
the step, and then resamples the curve to uniform spacing. The curve
is evolved until its curvature or length says that the vertex budget
is spent, and the singular time is estimated from the blow-up rate of
the curvature.
"""
import logging
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy.interpolate import CubicSpline
from scipy.linalg import solve_banded

from gaussdens.definitions.errors import StepRejected
from gaussdens.definitions.geometry import DiscreteCurve
from gaussdens.definitions.trajectory import (
        Frame, SingularTimeEstimate, StepDiagnostics, Trajectory)
from gaussdens.util import FloatArray


logger = logging.getLogger(__name__)


DEFAULT_CFL = 0.25


def _solve_cyclic(
        lower: FloatArray, diagonal: FloatArray, upper: FloatArray,
        rhs: FloatArray) -> FloatArray:
    """Solve a cyclic tridiagonal system.

    Row i reads lower[i] x[i-1] + diagonal[i] x[i] + upper[i] x[i+1],
    with indices taken modulo N. The corners are folded into a rank
    one correction (Sherman-Morrison) on top of a banded solve.

    Args:
        lower: Coefficients of the previous unknown, (N,).
        diagonal: Diagonal coefficients, (N,).
        upper: Coefficients of the next unknown, (N,).
        rhs: Right hand side(s), (N,) or (N, k).
    """
    n = diagonal.shape[0]
    alpha, beta = lower[0], upper[n - 1]
    gamma = -diagonal[0]

    banded = np.zeros((3, n))
    banded[0, 1:] = upper[:-1]
    banded[1] = diagonal
    banded[1, 0] -= gamma
    banded[1, n - 1] -= alpha * beta / gamma
    banded[2, :-1] = lower[1:]

    correction = np.zeros(n)
    correction[0] = gamma
    correction[n - 1] = beta

    columns = rhs.reshape(n, -1)
    solved = solve_banded(
            (1, 1), banded, np.column_stack([columns, correction]),
            check_finite=False)
    y, z = solved[:, :-1], solved[:, -1]
    factor = (
            (y[0] + alpha * y[n - 1] / gamma) /
            (1.0 + z[0] + alpha * z[n - 1] / gamma))
    return np.asarray((y - np.outer(z, factor)).reshape(rhs.shape))


def _resample(points: FloatArray, lengths: FloatArray) -> FloatArray:
    """Resample closed polygon vertices to uniform spacing.

    Args:
        points: Vertices, (N, 2).
        lengths: Edge lengths of the polygon, (N,).

    Return:
        The given points if the edges are equal up to roundoff, new
        vertices otherwise.
    """
    mean = float(np.mean(lengths))
    if float(np.max(lengths) - np.min(lengths)) <= 1e-12 * mean:
        return points

    parameter = np.concatenate([[0.0], np.cumsum(lengths)])
    closed = np.concatenate([points, points[:1]])
    spline = CubicSpline(parameter, closed, bc_type='periodic', axis=0)
    count = points.shape[0]
    samples = parameter[-1] * np.arange(count) / count
    return np.asarray(spline(samples))


def redistribute(curve: DiscreteCurve) -> DiscreteCurve:
    """Resample a closed curve to uniformly spaced vertices.

    A periodic cubic spline through the vertices, parameterized by
    chord length, is sampled at equal parameter steps starting at
    vertex 0. Curves whose edges are already equal up to roundoff are
    returned unchanged.
    """
    points = _resample(curve.vertices, curve.edge_lengths())
    if points is curve.vertices:
        return curve
    return DiscreteCurve(points)


def _advance(
        points: FloatArray, dt: float, cfl: float,
        redistribute_vertices: bool) -> FloatArray:
    """Step closed polygon vertices, see mcf_step().

    The result keeps the counterclockwise orientation of the input.
    """
    edges = np.roll(points, -1, axis=0) - points
    h_next = np.hypot(edges[:, 0], edges[:, 1])
    h_prev = np.roll(h_next, 1)
    limit = cfl * float(np.min(h_next))**2
    if dt > limit * (1.0 + 1e-12):
        raise ValueError(
                f'Time step {dt} exceeds the limit {limit} for cfl={cfl}')

    scale = 2.0 * dt / (h_prev + h_next)
    lower = -scale / h_prev
    upper = -scale / h_next
    diagonal = 1.0 - lower - upper

    new_points = _solve_cyclic(lower, diagonal, upper, points)

    new_edges = np.roll(new_points, -1, axis=0) - new_points
    new_lengths = np.hypot(new_edges[:, 0], new_edges[:, 1])
    if float(np.min(new_lengths)) <= 1e-12 * float(np.max(h_next)):
        raise StepRejected(dt, 'an edge collapsed')
    if np.any(np.sum(edges * new_edges, axis=1) <= 0.0):
        raise StepRejected(dt, 'an edge reversed its direction')

    if redistribute_vertices:
        new_points = _resample(new_points, new_lengths)
    return new_points


def mcf_step(
        curve: DiscreteCurve, dt: float, cfl: float = DEFAULT_CFL,
        redistribute_vertices: bool = True) -> DiscreteCurve:
    """Take one semi-implicit step of curve shortening flow.

    The new vertices solve (I - dt L) x_new = x, with L the arc-length
    Laplacian of the current polygon. For a vertex i with adjacent
    edges h_prev and h_next this is
    2 / (h_prev + h_next) ((x_next - x) / h_next - (x - x_prev) / h_prev).

    Args:
        curve: A closed curve.
        dt: Time step, at most cfl times the squared shortest edge.
        cfl: Stability factor.
        redistribute_vertices: Whether to resample to uniform spacing
            after the step.

    Return:
        The curve after the step, with the same number of vertices.

    Raises:
        ValueError: If the curve is open, dt is negative or dt is too
            large.
        StepRejected: If the step would collapse an edge or reverse
            its direction.
    """
    if not curve.closed:
        raise ValueError('Only closed curves can be evolved')
    if dt < 0.0:
        raise ValueError(f'Time step must be nonnegative, got {dt}')
    if dt == 0.0:
        return curve
    return DiscreteCurve(
            _advance(curve.vertices, dt, cfl, redistribute_vertices))



class StopRule:
    """When to stop evolving a curve.

    Attributes:
        curvature: Stop once the largest curvature times the initial
            diameter exceeds this.
        length_fraction: Stop once the length drops below this
            fraction of the initial length.
        max_steps: Stop after this many steps.
        max_time: Stop at this time, if given.
    """
    def __init__(
            self, curvature: float = 100.0, length_fraction: float = 1e-3,
            max_steps: int = 2000000, max_time: Optional[float] = None
            ) -> None:
        """Create a StopRule.

        Raises:
            ValueError: If a threshold is out of range.
        """
        if not curvature > 0.0:
            raise ValueError(
                    f'Curvature threshold must be positive, got {curvature}')
        if not 0.0 < length_fraction < 1.0:
            raise ValueError(
                    f'Length fraction must be in (0, 1), got'
                    f' {length_fraction}')
        if max_steps < 1:
            raise ValueError(f'Need at least one step, got {max_steps}')
        if max_time is not None and not max_time > 0.0:
            raise ValueError(f'Stop time must be positive, got {max_time}')
        self.curvature = curvature
        self.length_fraction = length_fraction
        self.max_steps = max_steps
        self.max_time = max_time


def step_metrics(points: FloatArray) -> Tuple[float, float, float]:
    """Return the largest curvature, shortest edge and length.

    The curvature is that of compute_geometry(), but only its largest
    absolute value is computed.

    Args:
        points: Vertices of a closed polygon, (N, 2).

    Return:
        Largest absolute curvature, shortest edge length and total
        length.
    """
    edges = np.roll(points, -1, axis=0) - points
    lengths = np.hypot(edges[:, 0], edges[:, 1])
    prev_edges = np.roll(edges, 1, axis=0)
    cross = np.abs(
            prev_edges[:, 0] * edges[:, 1] - prev_edges[:, 1] * edges[:, 0])
    chords = prev_edges + edges
    denominator = (
            np.roll(lengths, 1) * lengths *
            np.hypot(chords[:, 0], chords[:, 1]))
    safe = denominator > 0.0
    curvature = np.zeros_like(cross)
    curvature[safe] = 2.0 * cross[safe] / denominator[safe]
    return (
            float(np.max(curvature)), float(np.min(lengths)),
            float(np.sum(lengths)))


def estimate_singular_time(
        frames: Sequence[Frame], fit_frames: int = 20
        ) -> Optional[SingularTimeEstimate]:
    """Estimate when the curvature of a flow blows up.

    Assuming sup|k| = C / sqrt(2 (T - t)), the quantity 1 / sup|k|^2
    is linear in t and vanishes at T. A least squares line through the
    last frames gives T and C, and the covariance of the fit gives the
    uncertainty of T.

    Args:
        frames: Recorded frames, in time order.
        fit_frames: Number of final frames to fit.

    Return:
        The estimate, or None if fewer than three frames are
        available or the curvature does not grow.
    """
    used = [frame for frame in frames if frame.max_curvature > 0.0]
    used = used[-fit_frames:]
    if len(used) < 3:
        return None

    times = np.array([frame.t for frame in used])
    inverse = 1.0 / np.array([frame.max_curvature for frame in used])**2
    if len(used) > 3:
        coefficients, covariance = np.polyfit(times, inverse, 1, cov=True)
    else:
        coefficients = np.polyfit(times, inverse, 1)
        covariance = np.zeros((2, 2))
    slope, intercept = coefficients
    if not slope < 0.0:
        return None

    value = -intercept / slope
    jacobian = np.array([intercept / slope**2, -1.0 / slope])
    variance = float(jacobian @ covariance @ jacobian)
    constant = float(np.sqrt(-2.0 / slope))
    return SingularTimeEstimate(value, np.sqrt(max(variance, 0.0)), constant)


def evolve(
        curve: DiscreteCurve, stop: Optional[StopRule] = None,
        cfl: float = DEFAULT_CFL, frame_spacing: float = 0.02,
        record_times: Sequence[float] = (), fit_frames: int = 20,
        redistribute_vertices: bool = True) -> Trajectory:
    """Evolve a closed curve by curve shortening flow.

    The time step is cfl times the squared shortest edge. A rejected
    step is retried with half the time step, up to 20 times, after
    which the run is ended and flagged. Frames are recorded at t = 0,
    whenever at least frame_spacing / sup|k|^2 has passed since the
    last one, at each of the record_times (steps are shortened to land
    on them), and at the end.

    Args:
        curve: The initial closed curve.
        stop: When to stop, defaults if not given.
        cfl: Stability factor.
        frame_spacing: Spacing of frames in units of the curvature
            time scale 1 / sup|k|^2.
        record_times: Extra times at which to record frames.
        fit_frames: Number of final frames used to estimate the
            singular time.
        redistribute_vertices: Whether to resample to uniform spacing
            after every step.

    Return:
        The trajectory with its singular time estimate. No estimate is
        made if the run was stopped by max_time.

    Raises:
        ValueError: If the curve is open or cfl is out of range.
    """
    if stop is None:
        stop = StopRule()
    if not curve.closed:
        raise ValueError('Only closed curves can be evolved')
    if not 0.0 < cfl <= 1.0:
        raise ValueError(f'cfl must be in (0, 1], got {cfl}')

    diameter = curve.diameter()
    pending = sorted(t for t in record_times if t > 0.0)

    t = 0.0
    points = curve.vertices
    max_k, min_edge, initial_length = step_metrics(points)
    frames = [Frame(0.0, curve, max_k, min_edge)]
    steps = list()      # type: List[StepDiagnostics]
    flagged, reason, singular = False, '', False

    while True:
        if len(steps) >= stop.max_steps:
            flagged, reason = True, 'step limit reached'
            logger.warning(f'Stopping after {len(steps)} steps at t={t}')
            break
        if stop.max_time is not None and t >= stop.max_time:
            break

        dt = cfl * min_edge**2
        landing = None      # type: Optional[float]
        targets = pending[:1]
        if stop.max_time is not None:
            targets.append(stop.max_time)
        for target in targets:
            if target - t <= dt:
                dt, landing = target - t, target

        for _ in range(20):
            try:
                new_points = _advance(
                        points, dt, cfl, redistribute_vertices)
                break
            except StepRejected as e:
                logger.debug(f'{e}, halving')
                dt *= 0.5
                landing = None
        else:
            flagged, reason = True, 'dt underflow'
            logger.warning(f'Step rejected 20 times at t={t}, stopping')
            break

        t = landing if landing is not None else t + dt
        points = new_points
        max_k, min_edge, length = step_metrics(points)
        steps.append(StepDiagnostics(t, dt, max_k, min_edge, length))

        hit = bool(pending) and t >= pending[0]
        while pending and pending[0] <= t:
            pending.pop(0)

        if max_k * diameter > stop.curvature:
            singular = True
        if length < stop.length_fraction * initial_length:
            singular = True
        at_end = singular or (
                stop.max_time is not None and t >= stop.max_time)

        spacing = frame_spacing / max(max_k, 1e-300)**2
        if hit or at_end or t - frames[-1].t >= spacing:
            frames.append(Frame(t, DiscreteCurve(points), max_k, min_edge))
        if singular:
            break

    if t > frames[-1].t:
        frames.append(Frame(t, DiscreteCurve(points), max_k, min_edge))

    estimate = None
    if stop.max_time is None or singular:
        estimate = estimate_singular_time(frames, fit_frames)
        if estimate is None:
            flagged = True
            reason = reason or 'could not estimate the singular time'
    if estimate is not None:
        logger.info(
                f'Flow stopped at t={t} after {len(steps)} steps,'
                f' estimated T = {estimate.value} ± {estimate.uncertainty}')
    else:
        logger.info(f'Flow stopped at t={t} after {len(steps)} steps')

    return Trajectory(frames, estimate, steps, flagged, reason)
