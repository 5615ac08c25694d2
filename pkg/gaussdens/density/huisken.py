"""The Huisken functional and its closed forms on round spheres.

For a curve M, a center p and a scale tau, the Huisken functional is
the integral over M of exp(-|x - p|^2 / (4 tau)) / sqrt(4 pi tau),
the Gaussian weighted length. Along mean curvature flow with
tau = C - t it is nonincreasing, and it drops at a rate given by the
weighted self-shrinker residual |k + <x - p, nu> / (2 tau)|^2.

All curve integrals use Gauss-Legendre nodes on each edge, with
curvature and normals interpolated linearly between vertices.
"""
import logging
from typing import Optional

import numpy as np
from scipy.integrate import quad

from gaussdens.definitions.geometry import (
        CurveGeometry, DiscreteCurve, SphereState)
from gaussdens.definitions.kernels import KernelParams
from gaussdens.definitions.reports import DensityReport
from gaussdens.geometry.curves import compute_geometry, unit_sphere_area
from gaussdens.geometry.quadrature import CurveQuadrature
from gaussdens.util import FloatArray


logger = logging.getLogger(__name__)


def _check_plane(params: KernelParams) -> None:
    if params.ambient() != 2:
        raise ValueError(
                f'Curve functionals need a planar center, got dimension'
                f' {params.ambient()}')


def gaussian_weights(
        rule: CurveQuadrature, params: KernelParams) -> FloatArray:
    """Return quadrature weights times the normalized Gaussian."""
    squared = np.sum((rule.points - params.center)**2, axis=1)
    return np.asarray(
            rule.weights * np.exp(-squared / (4.0 * params.tau)) /
            np.sqrt(4.0 * np.pi * params.tau))


def huisken_functional(
        curve: DiscreteCurve, params: KernelParams, order: int = 4
        ) -> float:
    """Evaluate the Huisken functional of a curve.

    Args:
        curve: The curve to integrate over, open or closed.
        params: Center p and scale tau.
        order: Gauss-Legendre nodes per edge.

    Raises:
        ValueError: If the center is not a point in the plane.
    """
    _check_plane(params)
    rule = CurveQuadrature(curve, order)
    return float(np.sum(gaussian_weights(rule, params)))


def huisken_gradient(
        curve: DiscreteCurve, params: KernelParams, order: int = 4
        ) -> FloatArray:
    """Return the derivative of the Huisken functional in the center."""
    _check_plane(params)
    rule = CurveQuadrature(curve, order)
    weights = gaussian_weights(rule, params)
    offsets = rule.points - params.center
    return np.asarray(weights @ offsets / (2.0 * params.tau))


def shrinker_residual(
        curve: DiscreteCurve, params: KernelParams, order: int = 4,
        geometry: Optional[CurveGeometry] = None) -> float:
    """Evaluate the weighted self-shrinker residual of a curve.

    This integrates the normalized Gaussian times
    |k + <x - p, nu> / (2 tau)|^2 over the curve. It vanishes exactly
    when the curve is a self-shrinker about p at scale tau, such as
    the circle of radius sqrt(2 tau) around p or a line through p.

    Args:
        curve: The curve to integrate over.
        params: Center p and scale tau.
        order: Gauss-Legendre nodes per edge.
        geometry: Geometry of the curve, computed if not given.
    """
    _check_plane(params)
    if geometry is None:
        geometry = compute_geometry(curve)
    rule = CurveQuadrature(curve, order)

    curvature = rule.interpolate(geometry.curvature)
    normals = rule.interpolate(geometry.normals)
    normals /= np.hypot(normals[:, 0], normals[:, 1])[:, None]
    support = np.sum((rule.points - params.center) * normals, axis=1)
    defect = curvature + support / (2.0 * params.tau)
    return float(np.sum(gaussian_weights(rule, params) * defect**2))


def length_bound(curve: DiscreteCurve, tau: float) -> float:
    """Return length / sqrt(4 pi tau), an upper bound for sigma."""
    return curve.length() / np.sqrt(4.0 * np.pi * tau)


def sphere_huisken_functional(
        sphere: SphereState, params: KernelParams) -> float:
    """Evaluate the Huisken functional of a round sphere.

    By symmetry this reduces to an integral over the polar angle
    measured from the direction of the center p, which is done with
    adaptive quadrature unless p is the sphere's center.

    Args:
        sphere: The sphere.
        params: Center p, in the sphere's ambient space, and scale.
    """
    if params.ambient() != sphere.ambient():
        raise ValueError(
                f'Center has dimension {params.ambient()}, sphere lives'
                f' in {sphere.ambient()}')
    n, radius, tau = sphere.n, sphere.radius, params.tau
    distance = float(np.linalg.norm(params.center - sphere.center))
    if distance == 0.0:
        return sigma_sphere(sphere, tau)

    def integrand(theta: float) -> float:
        # shifted exponent to stay away from underflow
        excess = 2.0 * radius * distance * (1.0 - np.cos(theta))
        return float(
                np.exp(-excess / (4.0 * tau)) * np.sin(theta)**(n - 1))

    angular, _ = quad(integrand, 0.0, np.pi, epsabs=0.0, epsrel=1e-12)
    return float(
            unit_sphere_area(n - 1) * radius**n * angular *
            np.exp(-(radius - distance)**2 / (4.0 * tau)) /
            (4.0 * np.pi * tau)**(0.5 * n))


def sigma_sphere(sphere: SphereState, tau: float) -> float:
    """Return sigma of a round sphere in closed form.

    This is the functional centered at the sphere's center,
    area * exp(-R^2 / (4 tau)) / (4 pi tau)^(n/2). The center is a
    critical point by symmetry and the maximizer at the scales
    tau = R^2 / (2 n) met along the sphere's own flow. For much smaller
    scales a center on the sphere gives a larger value.
    """
    if not tau > 0.0:
        raise ValueError(f'Scale must be positive, got {tau}')
    n, radius = sphere.n, sphere.radius
    return float(
            unit_sphere_area(n) * radius**n *
            np.exp(-radius**2 / (4.0 * tau)) /
            (4.0 * np.pi * tau)**(0.5 * n))


def nu_sphere(sphere: SphereState) -> DensityReport:
    """Return nu of a round sphere in closed form.

    The maximizing scale is R^2 / (2 n), and the value
    omega_n (n / (2 pi))^(n/2) exp(-n/2) does not depend on R.
    """
    n = sphere.n
    tau = sphere.radius**2 / (2.0 * n)
    value = (
            unit_sphere_area(n) * (n / (2.0 * np.pi))**(0.5 * n) *
            np.exp(-0.5 * n))
    return DensityReport(value, sphere.center, tau)
