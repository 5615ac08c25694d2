"""Parabolic rescaling of flows around a singular time."""
from typing import Any

import numpy as np

from gaussdens.definitions.geometry import DiscreteCurve, SphereState
from gaussdens.definitions.kernels import KernelParams
from gaussdens.definitions.trajectory import RescaledFrame
from gaussdens.density.huisken import (
        huisken_functional, shrinker_residual, sphere_huisken_functional)


LIMIT_PARAMS = KernelParams((0.0, 0.0), 0.5)


def rescale_transform(
        curve: DiscreteCurve, t: float, singular_time: float, p: Any
        ) -> RescaledFrame:
    """Rescale a frame of a flow around a point.

    Vertices are mapped to (x - p) / sqrt(2 (T - t)), and the rescaled
    time is s = -log(T - t) / 2. Under this map a circle shrinking to p
    becomes the unit circle at every time.

    Args:
        curve: The curve at time t.
        t: Time of the frame.
        singular_time: The singular time T.
        p: Center of the rescaling.

    Raises:
        ValueError: If t is not before T.
    """
    if not t < singular_time:
        raise ValueError(
                f'Can only rescale before the singular time'
                f' {singular_time}, got t={t}')
    remaining = singular_time - t
    scale = 1.0 / np.sqrt(2.0 * remaining)
    center = np.asarray(p, dtype=float)
    rescaled = DiscreteCurve(
            (curve.vertices - center) * scale, closed=curve.closed)
    return RescaledFrame(
            -0.5 * np.log(remaining), rescaled, t, center, scale)


def limit_density(frame: RescaledFrame, order: int = 4) -> float:
    """Return the Gaussian density of a rescaled frame.

    This integrates exp(-|y|^2 / 2) / sqrt(2 pi) over the rescaled
    curve, which is one for any line through the origin and
    sqrt(2 pi / e) for the unit circle.
    """
    return huisken_functional(frame.curve, LIMIT_PARAMS, order)


def rescaled_residual(frame: RescaledFrame, order: int = 4) -> float:
    """Return the self-shrinker residual of a rescaled frame.

    The residual is taken around the origin at scale 1/2, where the
    shrinker equation reads k = -<y, nu>.
    """
    return shrinker_residual(frame.curve, LIMIT_PARAMS, order)


def sphere_limit_density(sphere: SphereState) -> float:
    """Return the Gaussian density of a sphere seen as a limit.

    This is (2 pi)^(-n/2) times the integral of exp(-|y|^2 / 2) over
    the sphere, the Huisken functional around the origin at scale 1/2.
    It equals sqrt(2 pi / e) for the unit circle and 4 / e for the
    sphere of radius sqrt(2) in space.
    """
    origin = KernelParams(np.zeros(sphere.ambient()), 0.5)
    return sphere_huisken_functional(sphere, origin)
