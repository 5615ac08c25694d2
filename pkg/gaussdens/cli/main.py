"""Entry point of the gaussdens command."""
import argparse
import errno
import logging
from pathlib import Path
import sys
from typing import List, Optional, TypeVar

import yatiml

from gaussdens.cli.commands import COMMANDS
from gaussdens.cli.settings import (
        DensitySettings, ExperimentConfig, FlowSettings, load_config,
        SHAPES)
from gaussdens.definitions.errors import ValidationError


logger = logging.getLogger(__name__)


EXIT_INVALID = 2


T = TypeVar('T')


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
            prog='gaussdens',
            description=(
                'Curve shortening flow, Gaussian densities and'
                ' singularity analysis'))
    parser.add_argument('command', choices=sorted(COMMANDS))
    source = parser.add_mutually_exclusive_group()
    source.add_argument(
            '--shape', choices=SHAPES, help='Built-in initial curve')
    source.add_argument(
            '--input', type=Path, help='Curve JSON file to start from')
    parser.add_argument(
            '--config', type=Path, help='YAML file with default settings')
    parser.add_argument('--radius', type=float, help='Circle radius')
    parser.add_argument('--a', type=float, help='Ellipse semi-axis along x')
    parser.add_argument('--b', type=float, help='Ellipse semi-axis along y')
    parser.add_argument('--n', type=int, help='Vertices of built-in shapes')
    parser.add_argument('--cfl', type=float, help='Time step factor')
    parser.add_argument(
            '--tau', type=float, help='Single scale for density')
    parser.add_argument(
            '--restarts', type=int, help='Extra random center searches')
    parser.add_argument('--out', type=Path, help='Output directory')
    parser.add_argument('--seed', type=int, help='Random seed')
    parser.add_argument(
            '--tol-scale', type=float, help='Factor for check tolerances')
    parser.add_argument(
            '--loglevel',
            choices=['critical', 'error', 'warning', 'info', 'debug'])
    return parser


def _pick(override: Optional[T], default: T) -> T:
    return default if override is None else override


def build_config(args: argparse.Namespace) -> ExperimentConfig:
    """Combine the configuration file with command line flags.

    Flags that were given override the values from the file.

    Raises:
        FileNotFoundError: If the configuration file does not exist.
        yatiml.RecognitionError: If the configuration file is invalid.
        ValueError: If a value is out of its documented range.
    """
    if args.config is not None:
        if not args.config.exists():
            raise FileNotFoundError(
                    errno.ENOENT, 'No such file', str(args.config))
        base = load_config(args.config)
    else:
        base = ExperimentConfig()

    flow = FlowSettings(
            n=_pick(args.n, base.flow.n),
            cfl=_pick(args.cfl, base.flow.cfl),
            k_stop=base.flow.k_stop,
            length_fraction=base.flow.length_fraction,
            max_steps=base.flow.max_steps,
            frame_spacing=base.flow.frame_spacing)
    density = DensitySettings(
            restarts=_pick(args.restarts, base.density.restarts),
            order=base.density.order,
            grid=base.density.grid,
            profile_points=base.density.profile_points)

    shape, source = base.shape, base.input
    if args.shape is not None:
        shape, source = args.shape, None
    if args.input is not None:
        source = args.input

    return ExperimentConfig(
            command=args.command, shape=shape,
            radius=_pick(args.radius, base.radius),
            a=_pick(args.a, base.a),
            b=_pick(args.b, base.b),
            input=source,
            out=_pick(args.out, base.out),
            tau=_pick(args.tau, base.tau),
            seed=_pick(args.seed, base.seed),
            tol_scale=_pick(args.tol_scale, base.tol_scale),
            loglevel=_pick(args.loglevel, base.loglevel),
            flow=flow, density=density)


def main(argv: Optional[List[str]] = None) -> int:
    """Run a command and return its exit code.

    Exit codes are 0 for success, 1 if a result was flagged or a
    check failed, and 2 for a missing or invalid input or
    configuration.
    """
    args = _parser().parse_args(argv)
    try:
        config = build_config(args)
    except FileNotFoundError as e:
        logging.basicConfig()
        logger.error(f'Configuration file not found: {e.filename}')
        return EXIT_INVALID
    except (ValueError, yatiml.RecognitionError) as e:
        logging.basicConfig()
        logger.error(f'Invalid configuration: {e}')
        return EXIT_INVALID

    logging.basicConfig(level=config.loglevel.upper())

    try:
        return COMMANDS[config.command](config)
    except FileNotFoundError as e:
        logger.error(f'Input file not found: {e.filename}')
        return EXIT_INVALID
    except (ValidationError, ValueError) as e:
        logger.error(f'Invalid input: {e}')
        return EXIT_INVALID


if __name__ == '__main__':
    sys.exit(main())
