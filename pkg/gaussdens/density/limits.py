"""Densities along flows and their limits at the singular time."""
import logging
from typing import Any, Callable, List, Optional, Sequence

import numpy as np

from gaussdens.definitions.kernels import KernelParams
from gaussdens.definitions.reports import DensityReport, LimitEstimate
from gaussdens.definitions.trajectory import Frame, Trajectory
from gaussdens.density.huisken import huisken_functional
from gaussdens.density.maximization import nu, SearchOptions, sigma


logger = logging.getLogger(__name__)


RELIABLE_RESOLUTION = 0.2


def reliable_frames(frames: Sequence[Frame], before: float) -> List[Frame]:
    """Return frames resolved well enough to evaluate densities.

    These are the frames before the given time whose largest curvature
    times shortest edge is at most 0.2.
    """
    return [
            frame for frame in frames
            if frame.t < before and
            frame.max_curvature * frame.min_edge <= RELIABLE_RESOLUTION]


def extrapolation_ladder(
        frames: Sequence[Frame], singular_time: float) -> List[Frame]:
    """Pick three frames for extrapolating to the singular time.

    The first is the frame closest to the singular time; the others are
    the frames whose remaining time is closest to twice and four times
    that of the first. Fewer are returned if there are no distinct
    frames to choose.
    """
    if not frames:
        return []
    remaining = np.array([singular_time - frame.t for frame in frames])
    nearest = int(np.argmin(remaining))
    chosen = [nearest]
    for factor in (2.0, 4.0):
        index = int(np.argmin(np.abs(remaining - factor * remaining[nearest])))
        if index not in chosen:
            chosen.append(index)
    return [frames[index] for index in chosen]


def _extrapolate(
        trajectory: Trajectory, what: str,
        evaluate: Callable[[Frame, float], float]) -> LimitEstimate:
    """Extrapolate a density along a trajectory to its singular time.

    A quadratic through the values at the three ladder frames, as a
    function of the remaining time, is evaluated at zero remaining
    time and clipped at zero.
    """
    singular_time = trajectory.singular_time()
    frames = reliable_frames(trajectory.frames, singular_time)
    ladder = extrapolation_ladder(frames, singular_time)
    if not ladder:
        ladder = [min(
                (frame for frame in trajectory.frames
                 if frame.t < singular_time),
                key=lambda frame: singular_time - frame.t)]

    times = [frame.t for frame in ladder]
    values = [evaluate(frame, singular_time - frame.t) for frame in ladder]

    if len(ladder) < 3:
        logger.warning(
                f'Only {len(ladder)} usable frame(s) to extrapolate {what},'
                f' using the frame at t={times[0]}')
        return LimitEstimate(
                values[0], times, values, flagged=True,
                reason='too few frames near the singular time')

    remaining = singular_time - np.array(times)
    coefficients = np.polyfit(remaining, np.array(values), 2)
    value = max(float(coefficients[-1]), 0.0)
    logger.debug(f'{what} extrapolated to {value} from {values}')
    return LimitEstimate(value, times, values)


def theta_estimate(
        trajectory: Trajectory, p: Any, order: int = 4) -> LimitEstimate:
    """Estimate the Gaussian density of a flow at a point.

    This is the limit of the Huisken functional centered at p with
    scale T - t as t approaches the singular time T.

    Args:
        trajectory: A curve flow with an estimated singular time.
        p: The point.
        order: Gauss-Legendre nodes per edge.
    """
    center = np.asarray(p, dtype=float)

    def evaluate(frame: Frame, tau: float) -> float:
        return huisken_functional(
                frame.curve(), KernelParams(center, tau), order)

    return _extrapolate(trajectory, 'Theta', evaluate)


def sigma_estimate(
        trajectory: Trajectory, options: Optional[SearchOptions] = None
        ) -> LimitEstimate:
    """Estimate the limit of sigma(curve at t, T - t) as t tends to T.

    A limit above one signals a genuine singularity.

    Args:
        trajectory: A curve flow with an estimated singular time.
        options: Center search settings.
    """
    def evaluate(frame: Frame, tau: float) -> float:
        return sigma(frame.curve(), tau, options).value

    return _extrapolate(trajectory, 'Sigma', evaluate)


def sigma_path(
        trajectory: Trajectory, clock: float,
        options: Optional[SearchOptions] = None) -> List[DensityReport]:
    """Compute sigma(curve at t, C - t) for every frame before C.

    Args:
        trajectory: A curve flow.
        clock: The time C at which the scale runs out.
        options: Center search settings.
    """
    reports = list()    # type: List[DensityReport]
    for frame in trajectory.frames:
        if frame.t >= clock:
            break
        hints = [reports[-1].center] if reports else []
        reports.append(sigma(frame.curve(), clock - frame.t, options, hints))
    return reports


def nu_profile(
        trajectory: Trajectory, count: int = 6,
        options: Optional[SearchOptions] = None) -> List[DensityReport]:
    """Compute nu at evenly spread reliable frames of a flow.

    nu is nonincreasing along mean curvature flow.

    Args:
        trajectory: A curve flow.
        count: Number of frames to evaluate.
        options: Search settings.

    Return:
        One report per evaluated frame, in time order.
    """
    end = trajectory.estimate.value if trajectory.estimate else np.inf
    frames = reliable_frames(trajectory.frames, end)
    if not frames:
        return []
    indices = np.unique(np.linspace(
            0, len(frames) - 1, min(count, len(frames))).astype(int))
    reports = list()    # type: List[DensityReport]
    for index in indices:
        report = nu(frames[index].curve(), options)
        logger.info(f'nu at t={frames[index].t}: {report.value}')
        reports.append(report)
    return reports
