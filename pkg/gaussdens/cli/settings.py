"""Experiment configuration."""
from pathlib import Path
from typing import AnyStr, IO, Optional, Union

import yaml
import yatiml

from gaussdens.density.maximization import SearchOptions
from gaussdens.flow.curve_flow import StopRule


COMMANDS = ('flow', 'density', 'analyze', 'verify')


SHAPES = ('circle', 'ellipse', 'square', 'rounded_square')


class FlowSettings:
    """How to evolve curves.

    Attributes:
        n: Number of vertices of built-in shapes.
        cfl: Time step factor, dt = cfl * (shortest edge)^2.
        k_stop: Stop when the largest curvature times the initial
            diameter exceeds this.
        length_fraction: Stop when the length drops below this
            fraction of the initial length.
        max_steps: Stop after this many steps.
        frame_spacing: Frame spacing in units of 1 / sup|k|^2.
    """
    def __init__(
            self, n: int = 256, cfl: float = 0.25, k_stop: float = 100.0,
            length_fraction: float = 1e-3, max_steps: int = 2000000,
            frame_spacing: float = 0.02) -> None:
        """Create a FlowSettings object.

        Raises:
            ValueError: If a value is out of its documented range.
        """
        if not 8 <= n <= 8192:
            raise ValueError(f'n must be in [8, 8192], got {n}')
        if not 0.0 < cfl <= 1.0:
            raise ValueError(f'cfl must be in (0, 1], got {cfl}')
        if not frame_spacing > 0.0:
            raise ValueError(
                    f'Frame spacing must be positive, got {frame_spacing}')
        # checks the remaining thresholds
        StopRule(k_stop, length_fraction, max_steps)

        self.n = n
        self.cfl = cfl
        self.k_stop = k_stop
        self.length_fraction = length_fraction
        self.max_steps = max_steps
        self.frame_spacing = frame_spacing

    def stop_rule(self, max_time: Optional[float] = None) -> StopRule:
        """Return the stopping rule described by these settings."""
        return StopRule(
                self.k_stop, self.length_fraction, self.max_steps, max_time)


class DensitySettings:
    """How to maximize the Huisken functional.

    Attributes:
        restarts: Random starting points on top of the grid.
        order: Gauss-Legendre nodes per edge, in 1..10.
        grid: Starting points per axis of the deterministic grid.
        profile_points: Number of scales in a sigma profile.
    """
    def __init__(
            self, restarts: int = 0, order: int = 4, grid: int = 5,
            profile_points: int = 41) -> None:
        """Create a DensitySettings object.

        Raises:
            ValueError: If a value is out of its documented range.
        """
        if restarts < 0:
            raise ValueError(f'restarts must be >= 0, got {restarts}')
        if not 1 <= order <= 10:
            raise ValueError(f'order must be in 1..10, got {order}')
        if grid < 1:
            raise ValueError(f'grid must be at least 1, got {grid}')
        if profile_points < 2:
            raise ValueError(
                    f'A profile needs at least 2 points, got'
                    f' {profile_points}')
        self.restarts = restarts
        self.order = order
        self.grid = grid
        self.profile_points = profile_points

    def search_options(self, seed: int) -> SearchOptions:
        """Return center search options for these settings."""
        return SearchOptions(
                grid=self.grid, restarts=self.restarts, seed=seed,
                order=self.order)


class ExperimentConfig:
    """Configuration for a single command run.

    Attributes:
        command: One of 'flow', 'density', 'analyze' or 'verify'.
        shape: Built-in shape to use if no input file is given, one
                of 'circle', 'ellipse', 'square' or 'rounded_square'.
        radius: Radius of the circle.
        a: First semi-axis of the ellipse.
        b: Second semi-axis of the ellipse.
        input: Curve JSON file to use instead of a built-in shape.
        out: Directory to write results to.
        tau: Single scale for the density command, or None for a
                profile over all scales.
        seed: Seed for random starting points and random tests.
        tol_scale: Factor applied to all verification slacks.
        loglevel: Logging level to use, one of 'critical', 'error',
                'warning', 'info', or 'debug'.
        flow: Flow settings.
        density: Density settings.
    """
    def __init__(
            self, command: str = 'flow', shape: str = 'circle',
            radius: float = 1.0, a: float = 2.0, b: float = 1.0,
            input: Optional[Path] = None, out: Path = Path('.'),
            tau: Optional[float] = None, seed: int = 0,
            tol_scale: float = 1.0, loglevel: str = 'info',
            flow: Optional[FlowSettings] = None,
            density: Optional[DensitySettings] = None) -> None:
        """Create an ExperimentConfig object.

        Raises:
            ValueError: If a value is out of its documented range.
        """
        if command not in COMMANDS:
            raise ValueError(
                    f'Unknown command {command}, expected one of'
                    f' {", ".join(COMMANDS)}')
        if shape not in SHAPES:
            raise ValueError(
                    f'Unknown shape {shape}, expected one of'
                    f' {", ".join(SHAPES)}')
        if not (radius > 0.0 and a > 0.0 and b > 0.0):
            raise ValueError(
                    f'Shape sizes must be positive, got radius {radius},'
                    f' a {a}, b {b}')
        if tau is not None and not tau > 0.0:
            raise ValueError(f'tau must be positive, got {tau}')
        if not tol_scale > 0.0:
            raise ValueError(f'tol_scale must be positive, got {tol_scale}')
        if loglevel.lower() not in (
                'critical', 'error', 'warning', 'info', 'debug'):
            raise ValueError(f'Invalid log level {loglevel}')

        self.command = command
        self.shape = shape
        self.radius = radius
        self.a = a
        self.b = b
        self.input = input
        self.out = out
        self.tau = tau
        self.seed = seed
        self.tol_scale = tol_scale
        self.loglevel = loglevel
        self.flow = flow if flow is not None else FlowSettings()
        self.density = density if density is not None else DensitySettings()

    @classmethod
    def _yatiml_recognize(cls, node: yatiml.UnknownNode) -> None:
        pass

    @classmethod
    def _yatiml_savorize(cls, node: yatiml.Node) -> None:
        if node.is_mapping():
            for section in ('flow', 'density'):
                if not node.has_attribute(section):
                    empty = yaml.MappingNode('tag:yaml.org,2002:map', [])
                    node.set_attribute(section, empty)


_load_config = yatiml.load_function(
        ExperimentConfig, FlowSettings, DensitySettings)


def load_config(source: Union[str, Path, IO[AnyStr]]) -> ExperimentConfig:
    """Load a configuration from a source.

    The source can be a string containing YAML, pathlib.Path containing
    a path to a file to load, or a stream (e.g. an open file handle
    returned by open()).

    Args:
        source: The source to load from.

    Returns:
        An object loaded from the file.

    Raises:
        yatiml.RecognitionError: If the input is invalid.
        ValueError: If a value is out of its documented range.
    """
    return _load_config(source)
