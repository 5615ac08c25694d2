"""A battery of numerical checks of the density theory.

Each check measures how far a computed quantity is from what the
theory predicts, and compares that with a tolerance. The tolerances
can all be scaled with a single factor.
"""
import logging
from typing import Callable, List, Optional

import numpy as np

from gaussdens.cli.settings import ExperimentConfig
from gaussdens.definitions.geometry import (
        DiscreteCurve, Isometry, SphereState)
from gaussdens.definitions.kernels import GaussianMixture, KernelParams
from gaussdens.definitions.reports import BreatherHypothesis
from gaussdens.definitions.trajectory import Trajectory
from gaussdens.density.calculator import DensityCalculator
from gaussdens.density.huisken import nu_sphere, sigma_sphere
from gaussdens.density.limits import nu_profile, sigma_path
from gaussdens.density.maximization import nu, SearchOptions, sigma
from gaussdens.flow.curve_flow import evolve, mcf_step, redistribute
from gaussdens.flow.hamilton import (
        hamilton_decomposition, hamilton_functional)
from gaussdens.flow.sphere_flow import (
        sphere_extinction_time, sphere_trajectory)
from gaussdens.geometry.curves import transform
from gaussdens.geometry.shapes import circle, ellipse, rounded_square
from gaussdens.heat.family import (
        extremality_check, li_yau_check, mixture_mass, random_mixture,
        second_term_integrand)
from gaussdens.singularity.breathers import (
        best_fit_hypothesis, breather_check)


logger = logging.getLogger(__name__)


CIRCLE_DENSITY = float(np.sqrt(2.0 * np.pi / np.e))


class PropertyResult:
    """Outcome of a single check.

    Attributes:
        name: Short name of the property.
        anchor: The statement being checked.
        measured: Measured deviation from the prediction.
        tolerance: Largest accepted deviation.
        passed: Whether the check passed.
    """
    def __init__(
            self, name: str, anchor: str, measured: float,
            tolerance: float, passed: Optional[bool] = None) -> None:
        """Create a PropertyResult.

        If passed is not given, the check passes if the measured
        deviation is at most the tolerance.
        """
        self.name = name
        self.anchor = anchor
        self.measured = measured
        self.tolerance = tolerance
        if passed is None:
            passed = bool(measured <= tolerance)
        self.passed = passed

    def __repr__(self) -> str:
        """Returns a string representation of the object."""
        return (
                f'PropertyResult({self.name}, measured={self.measured},'
                f' tolerance={self.tolerance}, passed={self.passed})')


class Trajectories:
    """The flows shared by the checks, computed on first use."""
    def __init__(self, config: ExperimentConfig) -> None:
        """Create a Trajectories object."""
        self._config = config
        self._circle = None     # type: Optional[Trajectory]
        self._ellipse = None    # type: Optional[Trajectory]

    def circle(self) -> Trajectory:
        """The unit circle flow, with a frame at t = 0.25."""
        if self._circle is None:
            self._circle = self._evolve(
                    circle(1.0, self._config.flow.n), 0.25)
        return self._circle

    def ellipse(self) -> Trajectory:
        """The 2:1 ellipse flow, with a frame at t = 0.1."""
        if self._ellipse is None:
            self._ellipse = self._evolve(
                    ellipse(2.0, 1.0, self._config.flow.n), 0.1)
        return self._ellipse

    def _evolve(self, curve: DiscreteCurve, record: float) -> Trajectory:
        flow = self._config.flow
        return evolve(
                curve, flow.stop_rule(), flow.cfl, flow.frame_spacing,
                record_times=[record])


def check_circle_oracle(
        trajectory: Trajectory, options: SearchOptions,
        tol_scale: float) -> PropertyResult:
    """sigma(curve at t, T - t) stays at the unit circle density."""
    clock = trajectory.singular_time()
    reports = [
            report for report in sigma_path(trajectory, clock, options)
            if report.tau >= clock - 0.45]
    error = max(abs(report.value - CIRCLE_DENSITY) for report in reports)
    error = max(error, abs(clock - 0.5))
    return PropertyResult(
            'shrinking circle', 'circles shrink homothetically to a point'
            ' at T = R^2 / 2 with sigma(T - t) = sqrt(2 pi / e)',
            error, 5e-3 * tol_scale)


def check_monotonicity(
        trajectory: Trajectory, options: SearchOptions,
        tol_scale: float) -> List[PropertyResult]:
    """sigma(curve at t, C - t) drops by the integrated residual.

    C is the estimated singular time. The integral of the shrinker
    residual at the maximizing centers is taken with the trapezoid
    rule over the frames.
    """
    clock = trajectory.singular_time()
    reports = sigma_path(trajectory, clock, options)
    frames = trajectory.frames[:len(reports)]
    times = np.array([frame.t for frame in frames])
    values = np.array([report.value for report in reports])
    residuals = np.array([report.residual for report in reports])

    increase = float(np.max(np.diff(values), initial=0.0))

    # cumulative trapezoid integral of the residual from the first frame
    steps = 0.5 * (residuals[1:] + residuals[:-1]) * np.diff(times)
    integral = np.concatenate([[0.0], np.cumsum(steps)])
    drops = values[:, None] - values[None, :]
    dissipated = integral[None, :] - integral[:, None]
    later = np.triu(np.ones_like(drops, dtype=bool), 1)
    shortfall = float(
            np.max(dissipated[later] - drops[later], initial=0.0))

    return [
            PropertyResult(
                'monotonicity', 'sigma(curve at t, C - t) is monotone'
                ' nonincreasing in t', increase, 1e-4 * tol_scale),
            PropertyResult(
                'integrated monotonicity', 'sigma(r) - sigma(t) is at'
                ' least the integral of the shrinker residual over [r, t]',
                shortfall, 1e-3 * tol_scale)]


def check_rescaling(
        options: SearchOptions, tol_scale: float, tau: float = 0.3
        ) -> PropertyResult:
    """sigma(lambda curve, lambda^2 tau) equals sigma(curve, tau)."""
    worst = 0.0
    for curve in (circle(1.0, 64), ellipse(2.0, 1.0, 64), rounded_square()):
        reference = sigma(curve, tau, options).value
        for factor in (0.5, 2.0, 10.0):
            scaled = transform(curve, Isometry(), factor)
            value = sigma(scaled, factor**2 * tau, options).value
            worst = max(worst, abs(value - reference))
    return PropertyResult(
            'rescaling invariance', 'sigma(lambda curve, lambda^2 tau)'
            ' = sigma(curve, tau) for every lambda > 0',
            worst, 1e-10 * tol_scale)


def check_li_yau(
        rng: np.random.Generator, tol_scale: float, trials: int = 1000
        ) -> PropertyResult:
    """Positive backward heat solutions satisfy the Harnack bound."""
    slack = 1e-12 * tol_scale
    violations = 0
    for trial in range(trials):
        m = random_mixture(rng, 2 + trial % 2)
        t = float(rng.uniform(0.0, 0.99 * m.tau))
        s = float(rng.uniform(0.0, t))
        x = rng.uniform(-3.0, 3.0, size=m.ambient)
        y = rng.uniform(-3.0, 3.0, size=m.ambient)
        if not li_yau_check(m, x, t, y, s, slack).holds:
            violations += 1
    return PropertyResult(
            'Li-Yau', 'v(x, t) <= v(y, s) ((tau - s) / (tau - t))^(d/2)'
            ' exp(|x - y|^2 / 4 (t - s))', violations, 0.0)


def check_hamilton(
        rng: np.random.Generator, tol_scale: float, samples: int = 100
        ) -> List[PropertyResult]:
    """The Hamilton derivative splits as predicted.

    The second term integrand of a single kernel is measured relative
    to the peak kernel value divided by the remaining scale, and is
    sampled within a few kernel widths of the atom. The derivative is
    compared with a centered difference over two small steps.
    """
    worst_term = 0.0
    for _ in range(samples):
        m = random_mixture(rng, 2, atoms=1)
        t = float(rng.uniform(0.0, 0.99 * m.tau))
        width = np.sqrt(m.tau - t)
        point = m.centers[0] + width * rng.uniform(-3.0, 3.0, size=2)
        angle = rng.uniform(0.0, 2.0 * np.pi)
        normal = np.array([np.cos(angle), np.sin(angle)])
        value = float(second_term_integrand(m, point, normal, t))
        scale = m.weights[0] / (4.0 * np.pi * (m.tau - t)) / (m.tau - t)
        worst_term = max(worst_term, abs(value) / scale)

    curve = redistribute(ellipse(2.0, 1.0, 1024))
    clock = 1.5
    m = GaussianMixture(
            rng.uniform(-1.0, 1.0, size=(3, 2)), [0.5, 0.3, 0.2], clock)
    dt = 1e-5
    middle = mcf_step(curve, dt, redistribute_vertices=False)
    last = mcf_step(middle, dt, redistribute_vertices=False)
    difference = (
            hamilton_functional(last, m, clock, 2.0 * dt) -
            hamilton_functional(curve, m, clock, 0.0)) / (2.0 * dt)
    terms = hamilton_decomposition(middle, m, clock, dt)
    relative = abs(terms.total - difference) / abs(difference)

    return [
            PropertyResult(
                'Hamilton second term', 'the second term vanishes for a'
                ' single backward heat kernel', worst_term,
                1e-12 * tol_scale),
            PropertyResult(
                'Hamilton decomposition', 'the two terms add up to the'
                ' derivative of sqrt(2 (C - t)) times the integral of u',
                relative, 1e-3 * tol_scale)]


def check_mass(
        rng: np.random.Generator, tol_scale: float, trials: int = 20
        ) -> PropertyResult:
    """Mixtures keep unit mass under the backward heat flow."""
    worst = 0.0
    for trial in range(trials):
        m = random_mixture(rng, 2 + trial % 2)
        t = float(rng.uniform(0.0, 0.99 * m.tau))
        worst = max(worst, abs(mixture_mass(m, t) - 1.0))
    return PropertyResult(
            'mass conservation', 'solutions in the family have unit mass'
            ' at all times', worst, 1e-10 * tol_scale)


def check_extremality(
        rng: np.random.Generator, options: SearchOptions,
        tol_scale: float, trials: int = 20) -> PropertyResult:
    """No mixture beats the best single heat kernel."""
    curve = ellipse(2.0, 1.0, 128)
    worst = 0.0
    for _ in range(trials):
        m = random_mixture(rng, 2, spread=1.5)
        best = sigma(curve, m.tau, options)
        params = KernelParams(best.center, m.tau)
        if not extremality_check(curve, m.tau, m, params, 1e-9 * tol_scale):
            worst = max(worst, 1.0)
    return PropertyResult(
            'extremality', 'the supremum over the family is attained by'
            ' a heat kernel', worst, 0.0)


def check_breathers(
        trajectories: Trajectories, density: DensityCalculator,
        tol_scale: float) -> List[PropertyResult]:
    """The circle is a breather, the ellipse is not."""
    hypothesis = BreatherHypothesis(0.25, np.sqrt(0.5))
    result = breather_check(trajectories.circle(), hypothesis, density)
    measured = max(result.residual_integral / 1e-5, result.sigma_gap / 1e-4)
    circle_check = PropertyResult(
            'circle breather', 'every compact breather is a homothetic'
            ' solution', measured, tol_scale,
            passed=result.is_breather and measured <= tol_scale)

    hypothesis = best_fit_hypothesis(trajectories.ellipse(), 0.1)
    result = breather_check(trajectories.ellipse(), hypothesis, density)
    ellipse_check = PropertyResult(
            'ellipse is no breather', 'a flow that is not homothetic has'
            ' a positive residual integral', result.residual_integral,
            1e-2, passed=(
                not result.is_breather and result.residual_integral > 1e-2))
    return [circle_check, ellipse_check]


def check_nu(
        trajectory: Trajectory, options: SearchOptions, tol_scale: float
        ) -> List[PropertyResult]:
    """nu of the unit circle, and nu along a flow."""
    report = nu(circle(1.0, 256), options)
    error = max(abs(report.value - CIRCLE_DENSITY), abs(report.tau - 0.5))

    profile = nu_profile(trajectory, 4, options)
    values = np.array([entry.value for entry in profile])
    increase = float(np.max(np.diff(values), initial=0.0))
    return [
            PropertyResult(
                'nu of the circle', 'nu is finite and reached at some'
                ' scale, tau = 1/2 for the unit circle', error,
                1e-3 * tol_scale),
            PropertyResult(
                'nu monotonicity', 'nu is nonincreasing along the flow',
                increase, 1e-3 * tol_scale)]


def check_endpoints(
        options: SearchOptions, tol_scale: float) -> PropertyResult:
    """sigma tends to one at small scales and obeys the length bound."""
    curve = circle(1.0, 256)
    tau_lo = (2.0 * float(np.max(curve.edge_lengths())))**2
    worst = abs(sigma(curve, tau_lo, options).value - 1.0) / 2e-2
    for tau in np.geomspace(tau_lo, 100.0, 12):
        report = sigma(curve, float(tau), options)
        if report.bound is not None and report.value > report.bound:
            worst = max(worst, np.inf)
    return PropertyResult(
            'density endpoints', 'sigma tends to one at small scales and'
            ' is at most length / sqrt(4 pi tau)', worst, tol_scale)


def check_spheres(tol_scale: float) -> PropertyResult:
    """Closed forms for round spheres."""
    sphere = SphereState(2, np.sqrt(2.0))
    errors = [
            abs(sigma_sphere(sphere, 0.5) - 4.0 / np.e),
            abs(nu_sphere(sphere).value - 4.0 / np.e),
            abs(sphere_extinction_time(sphere) - 0.5)]
    trajectory = sphere_trajectory(sphere, [0.0, 0.25, 0.45])
    errors.append(abs(trajectory.singular_time() - 0.5))
    return PropertyResult(
            'sphere closed forms', 'round spheres shrink homothetically'
            ' with sigma(R^2 / 4) = 4 / e for n = 2', max(errors),
            1e-12 * tol_scale)


def run_battery(config: ExperimentConfig) -> List[PropertyResult]:
    """Run all checks.

    Args:
        config: The flow and density settings to use, the seed for the
                random checks and the tolerance scale.

    Return:
        One result per property, in a fixed order.
    """
    rng = np.random.default_rng(config.seed)
    options = config.density.search_options(config.seed)
    density = DensityCalculator(options)
    trajectories = Trajectories(config)
    tol_scale = config.tol_scale

    checks = [
            lambda: [check_circle_oracle(
                trajectories.circle(), options, tol_scale)],
            lambda: check_monotonicity(
                trajectories.circle(), options, tol_scale),
            lambda: check_monotonicity(
                trajectories.ellipse(), options, tol_scale),
            lambda: [check_rescaling(options, tol_scale)],
            lambda: [check_li_yau(rng, tol_scale)],
            lambda: check_hamilton(rng, tol_scale),
            lambda: [check_mass(rng, tol_scale)],
            lambda: [check_extremality(rng, options, tol_scale)],
            lambda: check_breathers(trajectories, density, tol_scale),
            lambda: check_nu(trajectories.ellipse(), options, tol_scale),
            lambda: [check_endpoints(options, tol_scale)],
            lambda: [check_spheres(tol_scale)],
            ]   # type: List[Callable[[], List[PropertyResult]]]

    results = list()    # type: List[PropertyResult]
    for check in checks:
        for result in check():
            status = 'passed' if result.passed else 'FAILED'
            logger.info(
                    f'{result.name}: {status}, measured {result.measured},'
                    f' tolerance {result.tolerance}')
            results.append(result)
    return results


def format_table(results: List[PropertyResult]) -> str:
    """Format results as a plain text table, one row per property."""
    width = max(len(result.name) for result in results)
    lines = list()      # type: List[str]
    for result in results:
        status = 'PASS' if result.passed else 'FAIL'
        lines.append(
                f'{result.name:<{width}}  {status}  {result.measured:.3e}'
                f'  (tolerance {result.tolerance:.1e})  {result.anchor}')
    return '\n'.join(lines)
