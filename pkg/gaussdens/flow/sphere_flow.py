"""Mean curvature flow of round spheres in closed form."""
import logging
from typing import List, Sequence

import numpy as np

from gaussdens.definitions.geometry import SphereState
from gaussdens.definitions.trajectory import (
        Frame, SingularTimeEstimate, Trajectory)
from gaussdens.geometry.curves import sphere_second_fundamental_norm


logger = logging.getLogger(__name__)


def sphere_extinction_time(sphere: SphereState) -> float:
    """Return R^2 / (2 n), the time at which the sphere vanishes."""
    return sphere.radius**2 / (2.0 * sphere.n)


def sphere_evolve(sphere: SphereState, t: float) -> SphereState:
    """Return the sphere after flowing for a time t.

    The radius follows dR/dt = -n / R, so R(t) = sqrt(R^2 - 2 n t),
    and the center stays put.

    Raises:
        ValueError: If t is negative or not before the extinction time.
    """
    extinction = sphere_extinction_time(sphere)
    if t < 0.0:
        raise ValueError(f'Time must be nonnegative, got {t}')
    if t >= extinction:
        raise ValueError(
                f'Sphere vanishes at t={extinction}, cannot evolve to'
                f' t={t}')
    if t == 0.0:
        return sphere
    radius = np.sqrt(sphere.radius**2 - 2.0 * sphere.n * t)
    return SphereState(sphere.n, radius, sphere.center)


def sphere_trajectory(
        sphere: SphereState, times: Sequence[float]) -> Trajectory:
    """Sample the exact flow of a sphere.

    Args:
        sphere: The initial sphere.
        times: Increasing sample times before extinction; t = 0 is
            added if missing.

    Return:
        A trajectory with the exact extinction time and type I
        constant 1.
    """
    samples = sorted(set([0.0] + [float(t) for t in times]))
    frames = list()     # type: List[Frame]
    for t in samples:
        state = sphere_evolve(sphere, t)
        frames.append(Frame(
                t, state, sphere_second_fundamental_norm(state),
                state.radius))
    estimate = SingularTimeEstimate(sphere_extinction_time(sphere), 0.0, 1.0)
    logger.debug(f'Sampled {len(frames)} frames of {sphere}')
    return Trajectory(frames, estimate)
