"""Reading and writing curves, mixtures, trajectories and tables.

JSON documents read from disk are validated against the schema before
being turned into objects. Floats are written with their repr, so
that they read back exactly.
"""
import csv
import json
import logging
from pathlib import Path
from typing import Any, List, Sequence

from gaussdens.definitions.geometry import DiscreteCurve
from gaussdens.definitions.kernels import GaussianMixture
from gaussdens.definitions.reports import DensityReport
from gaussdens.definitions.trajectory import (
        Frame, RescaledFrame, StepDiagnostics, Trajectory)
from gaussdens.formats.serialization import (
        deserialize, serialize, Serializable)
from gaussdens.formats.validation import parse_json


logger = logging.getLogger(__name__)


def _read_text(path: Path) -> str:
    with open(path, 'r', encoding='utf-8') as f:
        return f.read()


def _write_json(path: Path, data: Any) -> None:
    with open(path, 'w', encoding='utf-8') as f:
        json.dump(data, f, indent=1)
        f.write('\n')


def read_curve(path: Path) -> DiscreteCurve:
    """Read a curve from a JSON file.

    Raises:
        FileNotFoundError: If the file does not exist.
        ValidationError: If the file is not a valid curve document.
        ValueError: If the vertices do not form a valid curve.
    """
    user_input = parse_json('Curve', _read_text(path))
    return deserialize(DiscreteCurve, user_input)


def write_curve(path: Path, curve: DiscreteCurve) -> None:
    """Write a curve to a JSON file."""
    _write_json(path, serialize(curve))


def read_mixture(path: Path) -> GaussianMixture:
    """Read a mixture from a JSON file.

    Raises:
        FileNotFoundError: If the file does not exist.
        ValidationError: If the file is not a valid mixture document.
        ValueError: If the atoms do not form a valid mixture.
    """
    user_input = parse_json('Mixture', _read_text(path))
    return deserialize(GaussianMixture, user_input)


def write_mixture(path: Path, mixture: GaussianMixture) -> None:
    """Write a mixture to a JSON file."""
    _write_json(path, serialize(mixture))


def write_report(path: Path, obj: Serializable) -> None:
    """Write a report or other serializable object to a JSON file."""
    _write_json(path, serialize(obj))


def write_trajectory(path: Path, trajectory: Trajectory) -> None:
    """Write the frames of a curve flow, one JSON object per line."""
    with open(path, 'w', encoding='utf-8') as f:
        for frame in trajectory.frames:
            f.write(json.dumps(serialize(frame)))
            f.write('\n')
    logger.debug(f'Wrote {len(trajectory.frames)} frames to {path}')


def read_trajectory(path: Path) -> Trajectory:
    """Read the frames of a curve flow written by write_trajectory().

    The result has no singular time estimate or step diagnostics.

    Raises:
        FileNotFoundError: If the file does not exist.
        ValidationError: If a line is not a valid frame.
    """
    frames = list()     # type: List[Frame]
    for line in _read_text(path).splitlines():
        if line.strip():
            user_input = parse_json('TrajectoryFrame', line)
            frames.append(deserialize(Frame, user_input))
    return Trajectory(frames)


def write_diagnostics(path: Path, steps: Sequence[StepDiagnostics]) -> None:
    """Write per-step diagnostics of a flow to a CSV file."""
    with open(path, 'w', encoding='utf-8', newline='') as f:
        writer = csv.writer(f)
        writer.writerow(['t', 'dt', 'max_k', 'min_edge', 'length'])
        for step in steps:
            writer.writerow([
                    repr(step.t), repr(step.dt), repr(step.max_k),
                    repr(step.min_edge), repr(step.length)])


def write_profile(path: Path, reports: Sequence[DensityReport]) -> None:
    """Write sigma as a function of tau, with maximizers, to CSV."""
    with open(path, 'w', encoding='utf-8', newline='') as f:
        writer = csv.writer(f)
        writer.writerow(['tau', 'sigma', 'px', 'py'])
        for report in reports:
            writer.writerow([
                    repr(report.tau), repr(report.value),
                    repr(float(report.center[0])),
                    repr(float(report.center[1]))])


def read_table(path: Path) -> List[List[float]]:
    """Read a CSV file written by this module, skipping its header."""
    with open(path, 'r', encoding='utf-8', newline='') as f:
        rows = list(csv.reader(f))
    return [[float(value) for value in row] for row in rows[1:]]


def write_rescaled_frames(
        directory: Path, frames: Sequence[RescaledFrame]) -> List[Path]:
    """Write rescaled frames as curve files with their rescaled time.

    Return:
        The paths written, one per frame.
    """
    paths = list()      # type: List[Path]
    for index, frame in enumerate(frames):
        path = directory / f'rescaled_{index:03d}.json'
        _write_json(path, serialize(frame))
        paths.append(path)
    return paths
