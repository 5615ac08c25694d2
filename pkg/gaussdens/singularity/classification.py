"""Classifying the singularity at the end of a curve flow."""
import logging
from typing import List, Optional

import numpy as np

from gaussdens.definitions.interfaces import IDensityEstimator
from gaussdens.definitions.reports import (
        LimitMatch, SingularityReport, SingularityType)
from gaussdens.definitions.trajectory import (
        Frame, RescaledFrame, Trajectory)
from gaussdens.geometry.curves import (
        distance_to_line_through_origin, distance_to_unit_circle)
from gaussdens.singularity.rescaling import (
        limit_density, rescale_transform, rescaled_residual)
from gaussdens.util import FloatArray


logger = logging.getLogger(__name__)


class ClassificationOptions:
    """Thresholds for singularity classification.

    Attributes:
        window_fraction: Frames with T - t at most this fraction of T
            form the terminal window.
        min_window: Minimum number of frames in the window.
        rescaled_frames: Number of rescaled frames to build.
        type_i_bound: Largest type I constant accepted as bounded.
        growth_bound: Largest growth of the constant from the first
            half of the window to the second accepted as bounded.
        match_tolerance: Largest distance for a limit match.
        curvature_bound: Largest rescaled curvature for a circle match.
        jump_tolerance: Largest jump of the rescaling center, in
            rescaled units, before the analysis is flagged.
    """
    def __init__(
            self, window_fraction: float = 0.05, min_window: int = 4,
            rescaled_frames: int = 8, type_i_bound: float = 10.0,
            growth_bound: float = 1.5, match_tolerance: float = 0.05,
            curvature_bound: float = 3.0, jump_tolerance: float = 0.5
            ) -> None:
        """Create ClassificationOptions."""
        self.window_fraction = window_fraction
        self.min_window = min_window
        self.rescaled_frames = rescaled_frames
        self.type_i_bound = type_i_bound
        self.growth_bound = growth_bound
        self.match_tolerance = match_tolerance
        self.curvature_bound = curvature_bound
        self.jump_tolerance = jump_tolerance


def _unresolved(reason: str, singular_time: float) -> SingularityReport:
    logger.warning(f'Singularity unresolved: {reason}')
    return SingularityReport(
            SingularityType.UNRESOLVED, np.nan, np.nan, LimitMatch.NONE,
            np.nan, np.nan, np.nan, np.nan, np.nan, [], [], singular_time,
            flagged=True, reason=reason)


def _type_i_constants(
        frames: List[Frame], singular_time: float) -> FloatArray:
    remaining = singular_time - np.array([frame.t for frame in frames])
    curvatures = np.array([frame.max_curvature for frame in frames])
    return np.asarray(curvatures * np.sqrt(2.0 * remaining))


def _window(
        frames: List[Frame], singular_time: float,
        options: ClassificationOptions) -> List[Frame]:
    window = [
            frame for frame in frames
            if singular_time - frame.t <=
            options.window_fraction * singular_time]
    if len(window) < options.min_window:
        window = frames[-options.min_window:]
    return window


def _rescaling_frames(
        window: List[Frame], singular_time: float, count: int
        ) -> List[Frame]:
    """Pick frames geometrically spaced in T - t from the window."""
    remaining = singular_time - np.array([frame.t for frame in window])
    targets = np.geomspace(remaining[0], remaining[-1], count)
    indices = sorted(set(
            int(np.argmin(np.abs(np.log(remaining) - np.log(target))))
            for target in targets))
    return [window[index] for index in indices]


def classify(
        trajectory: Trajectory, density: IDensityEstimator,
        options: Optional[ClassificationOptions] = None
        ) -> SingularityReport:
    """Classify the singularity a curve flow runs into.

    The type I constant sup|k| sqrt(2 (T - t)) is computed on every
    frame. The singularity is of type I if its sup over the frames
    close to T is bounded and does not grow towards T. Frames close to
    T are then rescaled around the centers maximizing the Huisken
    functional at scale T - t, and the last one is compared with the
    self-shrinkers an embedded curve can converge to: the unit circle
    and the lines through the origin.

    Args:
        trajectory: A curve flow with an estimated singular time.
        density: Used for maximizing centers and the limit of sigma.
        options: Thresholds, defaults if not given.

    Return:
        The classification. It is Unresolved if there is no singular
        time estimate or too few frames before it.
    """
    if options is None:
        options = ClassificationOptions()
    if trajectory.estimate is None:
        return _unresolved('no singular time estimate', np.nan)

    singular_time = trajectory.estimate.value
    frames = [frame for frame in trajectory.frames if frame.t < singular_time]
    if len(frames) < max(3, options.min_window):
        return _unresolved(
                f'only {len(frames)} frames before T', singular_time)

    constants = _type_i_constants(frames, singular_time)
    global_constant = float(np.max(constants))
    window = _window(frames, singular_time, options)
    window_constants = constants[-len(window):]
    type_i_constant = float(np.max(window_constants))
    half = len(window_constants) // 2
    growth = (
            float(np.max(window_constants[half:])) /
            float(np.max(window_constants[:half])))

    if type_i_constant <= options.type_i_bound and (
            growth <= options.growth_bound):
        kind = SingularityType.TYPE_I
    else:
        kind = SingularityType.TYPE_II
    logger.info(
            f'Type I constant {type_i_constant} (global'
            f' {global_constant}, growth {growth}): {kind.value}')

    flagged, reasons = False, list()    # type: bool, List[str]
    fallback = frames[-1].curve().centroid()
    rescaled = list()       # type: List[RescaledFrame]
    for frame in _rescaling_frames(
            window, singular_time, options.rescaled_frames):
        hints = [rescaled[-1].center] if rescaled else []
        report = density.sigma(
                frame.curve(), singular_time - frame.t, hints=hints)
        center = report.center
        if report.flagged:
            logger.warning(
                    f'Center search flagged at t={frame.t}, rescaling'
                    f' around {fallback}')
            center = fallback
        current = rescale_transform(
                frame.curve(), frame.t, singular_time, center)
        if rescaled:
            jump = float(np.linalg.norm(
                    current.center - rescaled[-1].center)) * current.scale
            if jump > options.jump_tolerance:
                flagged = True
                reasons.append(f'center jumped by {jump} at t={frame.t}')
                logger.warning(
                        f'Rescaling center jumped by {jump} at t={frame.t}')
        rescaled.append(current)

    residuals = [rescaled_residual(frame) for frame in rescaled]
    final = rescaled[-1]
    final_curvature = frames[-1].max_curvature / final.scale
    circle_distance = distance_to_unit_circle(final.curve)
    line_distance = distance_to_line_through_origin(final.curve)

    if (circle_distance < options.match_tolerance and
            final_curvature <= options.curvature_bound):
        match = LimitMatch.UNIT_CIRCLE
        hausdorff = circle_distance
    elif line_distance < options.match_tolerance:
        match = LimitMatch.LINE
        hausdorff = line_distance
    else:
        match = LimitMatch.NONE
        hausdorff = circle_distance

    sigma = density.sigma_estimate(trajectory)
    if sigma.flagged:
        flagged = True
        reasons.append(sigma.reason)

    density_value = limit_density(final)
    logger.info(
            f'Limit {match.value} at distance {hausdorff}, density'
            f' {density_value}, Sigma {sigma.value}')
    return SingularityReport(
            kind, type_i_constant, global_constant, match, hausdorff,
            line_distance, sigma.value, density_value, residuals[-1],
            residuals, [frame.center for frame in rescaled], singular_time,
            flagged, '; '.join(reasons), rescaled)
