"""The commands of the command line interface.

Each command takes a complete configuration, writes its results to
the output directory and returns an exit code: 0 on success, 1 if a
result was flagged as unreliable or a check failed.
"""
import json
import logging
from typing import Callable, Dict

import numpy as np

from gaussdens.cli.settings import ExperimentConfig
from gaussdens.cli.verification import format_table, run_battery
from gaussdens.definitions.geometry import DiscreteCurve
from gaussdens.definitions.reports import SingularityType
from gaussdens.definitions.trajectory import Trajectory
from gaussdens.density.calculator import DensityCalculator
from gaussdens.density.limits import theta_estimate
from gaussdens.density.maximization import nu, sigma, sigma_profile
from gaussdens.density.search import log_grid
from gaussdens.flow.curve_flow import evolve
from gaussdens.formats.files import (
        read_curve, write_diagnostics, write_profile, write_report,
        write_rescaled_frames, write_trajectory)
from gaussdens.geometry.shapes import (
        circle, ellipse, rounded_square, square)
from gaussdens.singularity.classification import classify


logger = logging.getLogger(__name__)


def initial_curve(config: ExperimentConfig) -> DiscreteCurve:
    """Load the input curve, or build the configured shape.

    Raises:
        FileNotFoundError: If the input file does not exist.
        ValidationError: If the input file is not a valid curve.
    """
    if config.input is not None:
        logger.info(f'Reading curve from {config.input}')
        return read_curve(config.input)

    n = config.flow.n
    if config.shape == 'circle':
        return circle(config.radius, n)
    if config.shape == 'ellipse':
        return ellipse(config.a, config.b, n)
    if config.shape == 'square':
        return square(2.0, max(1, n // 4))
    return rounded_square(n=n)


def _prepare_output(config: ExperimentConfig) -> None:
    config.out.mkdir(parents=True, exist_ok=True)


def _run_flow(
        config: ExperimentConfig, curve: DiscreteCurve) -> Trajectory:
    flow = config.flow
    return evolve(
            curve, flow.stop_rule(), flow.cfl, flow.frame_spacing)


def _write_summary(config: ExperimentConfig, trajectory: Trajectory) -> None:
    estimate = trajectory.estimate
    summary = {
            'estimated_T': estimate.value if estimate else None,
            'uncertainty': estimate.uncertainty if estimate else None,
            'typeI_constant': (
                estimate.type_i_constant if estimate else None),
            'final_t': trajectory.final().t,
            'frames': len(trajectory.frames),
            'steps': len(trajectory.steps),
            'flagged': trajectory.flagged,
            'reason': trajectory.reason}
    with open(config.out / 'flow.json', 'w', encoding='utf-8') as f:
        json.dump(summary, f, indent=1)
        f.write('\n')


def cmd_flow(config: ExperimentConfig) -> int:
    """Evolve a curve and write its trajectory.

    Writes trajectory.jsonl with one frame per line, diagnostics.csv
    with one row per step and flow.json with the singular time
    estimate.
    """
    curve = initial_curve(config)
    _prepare_output(config)
    trajectory = _run_flow(config, curve)

    write_trajectory(config.out / 'trajectory.jsonl', trajectory)
    write_diagnostics(config.out / 'diagnostics.csv', trajectory.steps)
    _write_summary(config, trajectory)

    if trajectory.flagged:
        logger.warning(f'Flow flagged: {trajectory.reason}')
        return 1
    return 0


def _write_limits(
        config: ExperimentConfig, trajectory: Trajectory,
        density: DensityCalculator) -> bool:
    """Write the limits of sigma and Theta along a flow.

    Theta is taken at the centroid of the final frame, where the
    curve vanishes.

    Return:
        True if the limits were written and not flagged.
    """
    if trajectory.estimate is None:
        logger.warning(
                f'No singular time estimate ({trajectory.reason}),'
                ' skipping the limits')
        return False

    limit = density.sigma_estimate(trajectory)
    write_report(config.out / 'Sigma.json', limit)
    point = trajectory.final().curve().centroid()
    theta = theta_estimate(trajectory, point, config.density.order)
    write_report(config.out / 'theta.json', theta)
    logger.info(f'Sigma = {limit.value}, Theta at {point} = {theta.value}')
    return not (limit.flagged or theta.flagged)


def cmd_density(config: ExperimentConfig) -> int:
    """Compute sigma at one scale, or its profile, nu and limits.

    With a configured tau, sigma at that scale is written to
    density.json. Otherwise sigma is computed on a logarithmic grid
    from (2 max edge)^2 up to 100 L^2 / (4 pi) and written to
    profile.csv, and nu is written to nu.json. The curve is then
    evolved into its singularity, and the limit Sigma of sigma along
    the flow and the Gaussian density Theta at the point where the
    curve vanishes are written to Sigma.json and theta.json.
    """
    curve = initial_curve(config)
    _prepare_output(config)
    options = config.density.search_options(config.seed)

    if config.tau is not None:
        report = sigma(curve, config.tau, options)
        write_report(config.out / 'density.json', report)
        logger.info(f'sigma(tau={config.tau}) = {report.value}')
        return 1 if report.flagged else 0

    tau_lo = (2.0 * float(np.max(curve.edge_lengths())))**2
    tau_hi = 100.0 * curve.length()**2 / (4.0 * np.pi)
    taus = log_grid(tau_lo, tau_hi, config.density.profile_points)
    reports = sigma_profile(curve, [float(tau) for tau in taus], options)
    write_profile(config.out / 'profile.csv', reports)

    best = nu(curve, options)
    write_report(config.out / 'nu.json', best)

    trajectory = _run_flow(config, curve)
    limits_ok = _write_limits(
            config, trajectory, DensityCalculator(options))

    flagged = [report for report in reports if report.flagged]
    if flagged:
        logger.warning(f'{len(flagged)} profile point(s) flagged')
    if best.flagged:
        logger.warning(f'nu flagged: {best.reason}')
    return 1 if flagged or best.flagged or not limits_ok else 0


def cmd_analyze(config: ExperimentConfig) -> int:
    """Evolve a curve into its singularity and classify it.

    Writes singularity.json with the classification, theta.json with
    the Gaussian density at the final rescaling center and the
    rescaled frames into the rescaled/ subdirectory.
    """
    curve = initial_curve(config)
    _prepare_output(config)
    trajectory = _run_flow(config, curve)
    write_diagnostics(config.out / 'diagnostics.csv', trajectory.steps)
    _write_summary(config, trajectory)

    density = DensityCalculator(config.density.search_options(config.seed))
    report = classify(trajectory, density)
    write_report(config.out / 'singularity.json', report)

    if report.rescaled_frames:
        directory = config.out / 'rescaled'
        directory.mkdir(exist_ok=True)
        write_rescaled_frames(directory, report.rescaled_frames)

    failed = report.type == SingularityType.UNRESOLVED or report.flagged
    if report.center_path:
        theta = theta_estimate(
                trajectory, report.center_path[-1], config.density.order)
        write_report(config.out / 'theta.json', theta)
        failed = failed or theta.flagged

    if report.flagged:
        logger.warning(f'Analysis flagged: {report.reason}')
    return 1 if failed or trajectory.flagged else 0


def cmd_verify(config: ExperimentConfig) -> int:
    """Run the verification battery and print a table of results.

    The table is also written to verify.txt. Returns 0 if and only if
    all properties pass.
    """
    _prepare_output(config)
    results = run_battery(config)
    table = format_table(results)
    print(table)
    with open(config.out / 'verify.txt', 'w', encoding='utf-8') as f:
        f.write(table)
        f.write('\n')

    failed = [result.name for result in results if not result.passed]
    if failed:
        logger.error(f'Failed properties: {", ".join(failed)}')
        return 1
    logger.info(f'All {len(results)} properties passed')
    return 0


COMMANDS = {
        'flow': cmd_flow,
        'density': cmd_density,
        'analyze': cmd_analyze,
        'verify': cmd_verify,
        }   # type: Dict[str, Callable[[ExperimentConfig], int]]
