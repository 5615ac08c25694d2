"""Testing whether a flow returns to a scaled and moved copy of itself.

A compact flow with curve(t_bar) = scale * L(curve(0)) for an
isometry L and a scale below one can only be a homothetically
shrinking self-shrinker. With C = t_bar / (1 - scale^2), sigma at
scale C of the initial curve equals sigma at scale C - t_bar of the
curve at t_bar, so by monotonicity the shrinker residual at the
maximizing centers must vanish on [0, t_bar].
"""
import logging
from typing import List, Tuple

import numpy as np
from scipy.integrate import trapezoid
from scipy.optimize import minimize_scalar
from scipy.spatial import cKDTree

from gaussdens.definitions.geometry import DiscreteCurve, Isometry
from gaussdens.definitions.interfaces import IDensityEstimator
from gaussdens.definitions.reports import (
        BreatherHypothesis, BreatherResult, DensityReport)
from gaussdens.definitions.trajectory import Frame, Trajectory
from gaussdens.geometry.curves import hausdorff_distance, transform


logger = logging.getLogger(__name__)


ANGLE_SAMPLES = 720


def align_rotation(
        reference: DiscreteCurve, target: DiscreteCurve
        ) -> Tuple[float, float]:
    """Find the rotation about the origin best matching two curves.

    The mean distance from each rotated reference vertex to the nearest
    target vertex is minimized over a grid of angles, and the best
    grid angle is then polished by a bounded scalar search.

    Args:
        reference: The curve to rotate.
        target: The curve to match.

    Return:
        The angle, and the mean vertex distance it achieves.
    """
    tree = cKDTree(target.vertices)

    def mismatch(angle: float) -> float:
        rotated = Isometry(angle).apply(reference.vertices)
        distances, _ = tree.query(rotated)
        return float(np.mean(distances))

    step = 2.0 * np.pi / ANGLE_SAMPLES
    angles = step * np.arange(ANGLE_SAMPLES)
    values = [mismatch(angle) for angle in angles]
    best = float(angles[int(np.argmin(values))])

    result = minimize_scalar(
            mismatch, bounds=(best - step, best + step), method='bounded',
            options={'xatol': 1e-10})
    if float(result.fun) < min(values):
        return float(result.x), float(result.fun)
    return best, float(min(values))


def best_fit_hypothesis(
        trajectory: Trajectory, t_bar: float) -> BreatherHypothesis:
    """Find the best breather hypothesis for a return time.

    The scale is the square root of the ratio of enclosed areas. The
    rotation aligns the scaled initial curve with the curve at t_bar
    about their centroids, and the translation then matches the
    centroids.

    Raises:
        ValueError: If no frame was recorded at t_bar, or the curve
            did not shrink.
    """
    initial = trajectory.frames[0].curve()
    later = _frame_at(trajectory, t_bar).curve()

    scale = float(np.sqrt(later.signed_area() / initial.signed_area()))
    start, end = initial.centroid(), later.centroid()
    reference = DiscreteCurve(scale * (initial.vertices - start))
    target = DiscreteCurve(later.vertices - end)
    angle, _ = align_rotation(reference, target)

    rotation = Isometry(angle).rotation()
    translation = end / scale - rotation @ start
    hypothesis = BreatherHypothesis(
            t_bar, scale, Isometry(angle, translation))
    logger.info(f'Best fitting hypothesis: {hypothesis}')
    return hypothesis


def _frame_at(trajectory: Trajectory, t: float) -> Frame:
    if t > trajectory.final().t:
        raise ValueError(
                f'Time {t} is beyond the end of the trajectory at'
                f' {trajectory.final().t}')
    try:
        return trajectory.frame_at(t)
    except KeyError:
        raise ValueError(f'No frame was recorded at t={t}')


def breather_check(
        trajectory: Trajectory, hypothesis: BreatherHypothesis,
        density: IDensityEstimator, shape_tolerance: float = 0.01,
        residual_tolerance: float = 1e-4, horizon: float = 10.0
        ) -> BreatherResult:
    """Test a breather hypothesis on a trajectory.

    The curve at t_bar is compared with the hypothesized image of the
    initial curve by Hausdorff distance, relative to its diameter.
    With C = t_bar / (1 - scale^2), the gap
    sigma(curve(0), C) - sigma(curve(t_bar), C - t_bar) and the
    trapezoid-rule integral over the frames in [0, t_bar] of the
    shrinker residual at the maximizing centers are computed. The flow
    is a breather if the shapes match and the residual integral
    vanishes.

    Args:
        trajectory: A curve flow covering [0, t_bar], with a frame at
            t_bar.
        hypothesis: The hypothesis to test.
        density: Used to maximize over centers.
        shape_tolerance: Largest accepted Hausdorff distance, as a
            fraction of the diameter.
        residual_tolerance: Largest accepted residual integral.
        horizon: C may be at most this multiple of the estimated
            singular time, or of the final time without an estimate.

    Raises:
        ValueError: If t_bar is beyond the trajectory, no frame was
            recorded at t_bar, or C is beyond the usable horizon.
    """
    t_bar = hypothesis.t_bar
    later = _frame_at(trajectory, t_bar).curve()
    clock = hypothesis.clock()
    reference_time = (
            trajectory.estimate.value if trajectory.estimate is not None
            else trajectory.final().t)
    if clock > horizon * reference_time:
        raise ValueError(
                f'C = {clock} is beyond the usable horizon'
                f' {horizon * reference_time} of the trajectory')

    initial = trajectory.frames[0].curve()
    predicted = transform(initial, hypothesis.isometry, hypothesis.scale)
    distance = hausdorff_distance(predicted, later)
    shape_match = distance <= shape_tolerance * later.diameter()

    reports = list()    # type: List[DensityReport]
    times = list()      # type: List[float]
    for frame in trajectory.frames:
        if frame.t > t_bar:
            break
        hints = [reports[-1].center] if reports else []
        reports.append(density.sigma(
                frame.curve(), clock - frame.t, hints=hints))
        times.append(frame.t)

    sigma_gap = reports[0].value - reports[-1].value
    residual_integral = float(trapezoid(
            [report.residual for report in reports], times))

    is_breather = shape_match and residual_integral <= residual_tolerance
    logger.info(
            f'Breather check at t_bar={t_bar}: distance {distance},'
            f' residual integral {residual_integral}, sigma gap'
            f' {sigma_gap}, breather: {is_breather}')
    return BreatherResult(
            is_breather, residual_integral, sigma_gap, distance,
            shape_match, clock)
