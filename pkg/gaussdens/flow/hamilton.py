"""Monotonicity of heat-solution weighted length along curve flows.

For a positive backward heat solution u whose clock runs out at C,
the weighted length sqrt(2 (C - t)) times the integral of u over the
curve is nonincreasing along curve shortening flow. Its derivative
splits into two nonpositive terms: a squared defect
|k - <grad log u, nu>|^2, and a Hessian term that vanishes
identically when u is a single heat kernel.
"""
import logging
from typing import NamedTuple

import numpy as np

from gaussdens.definitions.geometry import DiscreteCurve
from gaussdens.definitions.kernels import GaussianMixture
from gaussdens.geometry.curves import compute_geometry
from gaussdens.geometry.quadrature import CurveQuadrature
from gaussdens.heat.family import mixture_gradients, mixture_value


logger = logging.getLogger(__name__)


class HamiltonTerms(NamedTuple):
    """The time derivative of the weighted length and its two parts."""
    total: float
    term1: float
    term2: float


def _check_clock(m: GaussianMixture, clock: float, t: float) -> None:
    if abs(m.tau - clock) > 1e-12 * max(1.0, abs(clock)):
        raise ValueError(
                f'Mixture clock {m.tau} does not match C={clock}')
    if not 0.0 <= t < clock:
        raise ValueError(f'Expected 0 <= t < C={clock}, got t={t}')
    if m.ambient != 2:
        raise ValueError(
                f'Curves live in the plane, mixture in dimension'
                f' {m.ambient}')


def hamilton_functional(
        curve: DiscreteCurve, m: GaussianMixture, clock: float, t: float,
        order: int = 4) -> float:
    """Return sqrt(2 (C - t)) times the integral of u(., t) over a curve.

    Args:
        curve: The curve at time t.
        m: The heat solution u, with base scale equal to C.
        clock: The time C.
        t: The current time.
        order: Gauss-Legendre nodes per edge.

    Raises:
        ValueError: If the mixture's scale is not C, or t is not in
            [0, C).
    """
    _check_clock(m, clock, t)
    rule = CurveQuadrature(curve, order)
    integral = rule.integrate(mixture_value(m, rule.points, t))
    return float(np.sqrt(2.0 * (clock - t)) * integral)


def hamilton_decomposition(
        curve: DiscreteCurve, m: GaussianMixture, clock: float, t: float,
        order: int = 4) -> HamiltonTerms:
    """Split the derivative of the weighted length into its two terms.

    term1 = -sqrt(2 (C - t)) * integral of u |k - <grad u, nu> / u|^2
    term2 = -sqrt(2 (C - t)) * integral of
            (nu^T Hess(u) nu - <grad u, nu>^2 / u + u / (2 (C - t)))

    Their sum is the time derivative of hamilton_functional() along
    the flow.

    Args:
        curve: A closed curve at time t.
        m: The heat solution u, with base scale equal to C.
        clock: The time C.
        t: The current time.
        order: Gauss-Legendre nodes per edge.

    Raises:
        ValueError: If the mixture's scale is not C, or t is not in
            [0, C).
    """
    _check_clock(m, clock, t)
    geometry = compute_geometry(curve)
    rule = CurveQuadrature(curve, order)

    curvature = rule.interpolate(geometry.curvature)
    normals = rule.interpolate(geometry.normals)
    normals /= np.hypot(normals[:, 0], normals[:, 1])[:, None]

    values, gradients, hessians = mixture_gradients(m, rule.points, t)
    slopes = np.sum(gradients * normals, axis=1)
    bending = np.einsum('pi,pij,pj->p', normals, hessians, normals)
    remaining = clock - t
    factor = np.sqrt(2.0 * remaining)

    defect = values * (curvature - slopes / values)**2
    hessian_term = bending - slopes**2 / values + values / (2.0 * remaining)

    term1 = -factor * rule.integrate(defect)
    term2 = -factor * rule.integrate(hessian_term)
    logger.debug(f'Hamilton terms at t={t}: {term1}, {term2}')
    return HamiltonTerms(term1 + term2, term1, term2)
