"""Positive backward heat solutions as mixtures of heat kernels.

A mixture with base scale tau is the heat kernel convolved with a
finite probability measure. At time t in [0, tau) it is a positive
solution of the backward heat equation, and at t = 0 it is a member
of the family of initial data whose Gaussian densities bound those of
the delta measures. This module evaluates mixtures and their
derivatives, and checks their analytic properties numerically.
"""
import logging
from typing import Any, NamedTuple, Optional, Tuple

import numpy as np
from scipy.special import logsumexp

from gaussdens.definitions.geometry import DiscreteCurve
from gaussdens.definitions.kernels import GaussianMixture, KernelParams
from gaussdens.geometry.quadrature import CurveQuadrature, hermite_rule
from gaussdens.util import FloatArray


logger = logging.getLogger(__name__)


def _as_points(x: Any, ambient: int) -> Tuple[FloatArray, bool]:
    """Convert to an (P, d) array, remembering if it was one point."""
    points = np.asarray(x, dtype=float)
    single = points.ndim == 1
    points = np.atleast_2d(points)
    if points.shape[-1] != ambient:
        raise ValueError(
                f'Expected points with {ambient} coordinates, got'
                f' {points.shape[-1]}')
    return points, single


def _scale_at(m: GaussianMixture, t: float) -> float:
    if not 0.0 <= t < m.tau:
        raise ValueError(
                f'Mixture with scale {m.tau} is defined for t in'
                f' [0, {m.tau}), got t={t}')
    return m.tau - t


def heat_kernel(x: Any, params: KernelParams) -> Any:
    """Evaluate the heat kernel of the ambient space.

    This is exp(-|x - p|^2 / (4 tau)) / (4 pi tau)^(d/2) with d the
    dimension of the center.

    Args:
        x: A point, or an (P, d) array of points.
        params: Center p and scale tau.

    Return:
        The value, or an array of values.
    """
    d = params.ambient()
    points, single = _as_points(x, d)
    squared = np.sum((points - params.center)**2, axis=1)
    values = (
            np.exp(-squared / (4.0 * params.tau)) /
            (4.0 * np.pi * params.tau)**(0.5 * d))
    return float(values[0]) if single else values


def mixture_log_value(m: GaussianMixture, x: Any, t: float) -> Any:
    """Evaluate the logarithm of a mixture without underflow.

    Args:
        m: The mixture.
        x: A point, or an (P, d) array of points.
        t: Time, in [0, tau).
    """
    sigma = _scale_at(m, t)
    points, single = _as_points(x, m.ambient)
    squared = np.sum(
            (points[:, None, :] - m.centers[None, :, :])**2, axis=2)
    exponents = np.log(m.weights)[None, :] - squared / (4.0 * sigma)
    values = (
            logsumexp(exponents, axis=1) -
            0.5 * m.ambient * np.log(4.0 * np.pi * sigma))
    return float(values[0]) if single else values


def mixture_value(m: GaussianMixture, x: Any, t: float = 0.0) -> Any:
    """Evaluate a mixture.

    The value is the weighted sum of heat kernels centered at the
    atoms with scale tau - t.

    Args:
        m: The mixture.
        x: A point, or an (P, d) array of points.
        t: Time, in [0, tau).

    Raises:
        ValueError: If t is outside [0, tau).
    """
    sigma = _scale_at(m, t)
    points, single = _as_points(x, m.ambient)
    squared = np.sum(
            (points[:, None, :] - m.centers[None, :, :])**2, axis=2)
    kernels = (
            np.exp(-squared / (4.0 * sigma)) /
            (4.0 * np.pi * sigma)**(0.5 * m.ambient))
    values = kernels @ m.weights
    return float(values[0]) if single else values


def mixture_gradients(
        m: GaussianMixture, x: Any, t: float = 0.0
        ) -> Tuple[Any, FloatArray, FloatArray]:
    """Evaluate a mixture with its gradient and Hessian.

    For a single kernel K with center p and scale s the derivatives are
    -K (x - p) / (2 s) and K ((x - p)(x - p)^T / (4 s^2) - I / (2 s)).

    Args:
        m: The mixture.
        x: A point, or an (P, d) array of points.
        t: Time, in [0, tau).

    Return:
        Value(s), gradient(s) with shape (d,) or (P, d), and Hessian(s)
        with shape (d, d) or (P, d, d).
    """
    sigma = _scale_at(m, t)
    points, single = _as_points(x, m.ambient)
    offsets = points[:, None, :] - m.centers[None, :, :]
    squared = np.sum(offsets**2, axis=2)
    kernels = (
            m.weights[None, :] * np.exp(-squared / (4.0 * sigma)) /
            (4.0 * np.pi * sigma)**(0.5 * m.ambient))

    values = np.sum(kernels, axis=1)
    gradients = -np.einsum('pm,pmi->pi', kernels, offsets) / (2.0 * sigma)
    outer = np.einsum('pm,pmi,pmj->pij', kernels, offsets, offsets)
    hessians = (
            outer / (4.0 * sigma**2) -
            values[:, None, None] * np.eye(m.ambient) / (2.0 * sigma))

    if single:
        return float(values[0]), gradients[0], hessians[0]
    return values, gradients, hessians


def mixture_time_derivative(m: GaussianMixture, x: Any, t: float) -> Any:
    """Evaluate the time derivative of a mixture.

    This differentiates the kernels in their scale directly, so that
    comparing with minus the Laplacian checks the backward heat
    equation.
    """
    sigma = _scale_at(m, t)
    points, single = _as_points(x, m.ambient)
    squared = np.sum(
            (points[:, None, :] - m.centers[None, :, :])**2, axis=2)
    kernels = (
            m.weights[None, :] * np.exp(-squared / (4.0 * sigma)) /
            (4.0 * np.pi * sigma)**(0.5 * m.ambient))
    # d/dt = -d/ds with s = tau - t
    rates = -(squared / (4.0 * sigma**2) - 0.5 * m.ambient / sigma)
    values = np.sum(kernels * rates, axis=1)
    return float(values[0]) if single else values


class LiYauCheck(NamedTuple):
    """Both sides of the backward Harnack inequality."""
    lhs: float
    rhs: float
    holds: bool


def li_yau_check(
        m: GaussianMixture, x: Any, t: float, y: Any, s: float,
        slack: float = 1e-12) -> LiYauCheck:
    """Check the integral Harnack inequality for a mixture.

    For 0 <= s <= t < tau, a positive backward heat solution satisfies
    v(x, t) <= v(y, s) ((tau - s) / (tau - t))^(d/2)
    exp(|x - y|^2 / (4 (t - s))). Both sides are computed in log
    space. For s = t the right hand side is v(y, s) if x = y and
    infinite otherwise.

    Args:
        m: The mixture.
        x: Point at the later time.
        t: The later time.
        y: Point at the earlier time.
        s: The earlier time.
        slack: Relative slack allowed for roundoff.

    Raises:
        ValueError: If not 0 <= s <= t < tau.
    """
    if not 0.0 <= s <= t < m.tau:
        raise ValueError(
                f'Expected 0 <= s <= t < {m.tau}, got s={s}, t={t}')

    x_point = np.asarray(x, dtype=float)
    y_point = np.asarray(y, dtype=float)
    log_lhs = mixture_log_value(m, x_point, t)
    squared = float(np.sum((x_point - y_point)**2))

    if s == t:
        if squared == 0.0:
            log_rhs = log_lhs
        else:
            log_rhs = np.inf
    else:
        log_rhs = (
                mixture_log_value(m, y_point, s) +
                0.5 * m.ambient * np.log((m.tau - s) / (m.tau - t)) +
                squared / (4.0 * (t - s)))

    holds = bool(log_lhs <= log_rhs + np.log1p(slack))
    with np.errstate(over='ignore'):
        lhs, rhs = float(np.exp(log_lhs)), float(np.exp(log_rhs))
    if not holds:
        logger.warning(
                f'Harnack inequality violated: {lhs} > {rhs} at t={t},'
                f' s={s}')
    return LiYauCheck(lhs, rhs, holds)


def mixture_functional(
        curve: DiscreteCurve, m: GaussianMixture, order: int = 4
        ) -> float:
    """Integrate a planar mixture at t = 0 over a curve.

    The integral is multiplied by sqrt(4 pi tau), so that for a single
    atom this is the Huisken functional centered at the atom.
    """
    if m.ambient != curve.ambient:
        raise ValueError(
                f'Mixture lives in dimension {m.ambient}, curve in'
                f' {curve.ambient}')
    rule = CurveQuadrature(curve, order)
    values = mixture_value(m, rule.points, 0.0)
    return float(np.sqrt(4.0 * np.pi * m.tau) * rule.integrate(values))


def extremality_check(
        curve: DiscreteCurve, tau: float, m: GaussianMixture,
        best: KernelParams, slack: float = 1e-9, order: int = 4) -> bool:
    """Check that a mixture does not beat the best delta measure.

    The normalized integral of a mixture over the curve is a convex
    combination of Huisken functionals of its atoms, so it cannot
    exceed the functional at the maximizing center.

    Args:
        curve: The curve to integrate over.
        tau: The scale.
        m: A planar mixture with base scale tau.
        best: Maximizing center and scale tau.
        slack: Absolute tolerance.
        order: Quadrature nodes per edge.

    Raises:
        ValueError: If the scales do not match.
    """
    if abs(m.tau - tau) > 1e-12 * tau or abs(best.tau - tau) > 1e-12 * tau:
        raise ValueError(
                f'Scales do not match: tau={tau}, mixture {m.tau},'
                f' best {best.tau}')
    mixed = mixture_functional(curve, m, order)
    peak = mixture_functional(curve, GaussianMixture.single(best), order)
    if mixed > peak + slack:
        logger.warning(f'Mixture value {mixed} exceeds maximum {peak}')
        return False
    return True


def mixture_mass(
        m: GaussianMixture, t: float = 0.0, order: int = 24) -> float:
    """Integrate a mixture over the whole space.

    Each atom's kernel is integrated with a tensor Gauss-Hermite rule
    centered on that atom, and the results are combined with the atom
    weights.

    Args:
        m: The mixture.
        t: Time, in [0, tau).
        order: Gauss-Hermite nodes per coordinate.
    """
    sigma = _scale_at(m, t)
    total = 0.0
    for center, weight in m.atoms():
        points, weights = hermite_rule(center, np.sqrt(4.0 * sigma), order)
        kernel = heat_kernel(points, KernelParams(center, sigma))
        total += weight * float(np.dot(weights, kernel))
    return total


def second_term_integrand(
        m: GaussianMixture, points: Any, normals: Any, t: float) -> Any:
    """Evaluate the integrand of the second Hamilton term.

    This is the second normal derivative of u, minus the squared
    normal derivative divided by u, plus u / (2 (tau - t)). It vanishes
    identically for a single heat kernel.

    Args:
        m: The mixture u.
        points: A point or (P, d) array of points.
        normals: Matching unit normal(s).
        t: Time, in [0, tau).
    """
    sigma = _scale_at(m, t)
    values, gradients, hessians = mixture_gradients(m, points, t)
    directions = np.asarray(normals, dtype=float)
    if directions.ndim == 1:
        second = directions @ hessians @ directions
        first = float(gradients @ directions)
    else:
        second = np.einsum('pi,pij,pj->p', directions, hessians, directions)
        first = np.sum(gradients * directions, axis=1)
    return second - first**2 / values + values / (2.0 * sigma)


def random_mixture(
        rng: np.random.Generator, ambient: int,
        atoms: Optional[int] = None, spread: float = 2.0,
        tau_range: Tuple[float, float] = (0.05, 2.0)) -> GaussianMixture:
    """Draw a random mixture.

    Args:
        rng: Source of randomness.
        ambient: Dimension of the space.
        atoms: Number of atoms, random in 1..5 if not given.
        spread: Atoms are drawn uniformly from [-spread, spread]^d.
        tau_range: Range for the base scale, sampled log-uniformly.
    """
    count = atoms if atoms is not None else int(rng.integers(1, 6))
    centers = rng.uniform(-spread, spread, size=(count, ambient))
    weights = rng.uniform(0.1, 1.0, size=count)
    low, high = np.log(tau_range[0]), np.log(tau_range[1])
    tau = float(np.exp(rng.uniform(low, high)))
    return GaussianMixture(centers, weights / np.sum(weights), tau)
