"""Built-in test shapes."""
from typing import Any

import numpy as np

from gaussdens.definitions.geometry import DiscreteCurve


def circle(
        radius: float = 1.0, n: int = 256, center: Any = (0.0, 0.0),
        phase: float = 0.0) -> DiscreteCurve:
    """Return a regular n-gon inscribed in a circle.

    Args:
        radius: Radius of the circle.
        n: Number of vertices.
        center: Center of the circle.
        phase: Angle of the first vertex.
    """
    if not radius > 0.0:
        raise ValueError(f'Radius must be positive, got {radius}')
    angles = phase + 2.0 * np.pi * np.arange(n) / n
    points = radius * np.stack([np.cos(angles), np.sin(angles)], axis=1)
    return DiscreteCurve(points + np.asarray(center, dtype=float))


def ellipse(
        a: float = 2.0, b: float = 1.0, n: int = 512,
        center: Any = (0.0, 0.0)) -> DiscreteCurve:
    """Return an ellipse sampled uniformly in the angle parameter.

    Args:
        a: Semi-axis along x.
        b: Semi-axis along y.
        n: Number of vertices.
        center: Center of the ellipse.
    """
    if not (a > 0.0 and b > 0.0):
        raise ValueError(f'Semi-axes must be positive, got {a}, {b}')
    angles = 2.0 * np.pi * np.arange(n) / n
    points = np.stack([a * np.cos(angles), b * np.sin(angles)], axis=1)
    return DiscreteCurve(points + np.asarray(center, dtype=float))


def square(side: float = 2.0, subdivisions: int = 1) -> DiscreteCurve:
    """Return an axis-aligned square centered at the origin.

    Args:
        side: Length of a side.
        subdivisions: Number of edges each side is split into, so
            that 2 adds the midpoints of the sides.
    """
    if subdivisions < 1:
        raise ValueError(
                f'Need at least one edge per side, got {subdivisions}')
    h = 0.5 * side
    corners = np.array([[h, -h], [h, h], [-h, h], [-h, -h]])
    steps = np.arange(subdivisions) / subdivisions
    points = [
            corners[i] + s * (corners[(i + 1) % 4] - corners[i])
            for i in range(4) for s in steps]
    return DiscreteCurve(points)


def rounded_square(
        side: float = 2.0, radius: float = 0.25, n: int = 256
        ) -> DiscreteCurve:
    """Return a square with circular corners, sampled by arc length.

    Args:
        side: Length of a side of the enclosing square.
        radius: Radius of the corner arcs, at most side / 2.
        n: Number of vertices.
    """
    if not 0.0 < radius <= 0.5 * side:
        raise ValueError(
                f'Corner radius must be in (0, {0.5 * side}], got {radius}')
    straight = side - 2.0 * radius
    arc = 0.5 * np.pi * radius
    piece = straight + arc
    inner = 0.5 * side - radius

    positions = piece * 4.0 * np.arange(n) / n
    points = np.empty((n, 2))
    for i, position in enumerate(positions):
        quarter, offset = divmod(position, piece)
        if offset < straight:
            local = np.array([inner + radius, -inner + offset])
        else:
            angle = (offset - straight) / radius
            local = np.array([
                    inner + radius * np.cos(angle),
                    inner + radius * np.sin(angle)])
        turn = 0.5 * np.pi * quarter
        rotation = np.array([
                [np.cos(turn), -np.sin(turn)],
                [np.sin(turn), np.cos(turn)]])
        points[i] = rotation @ local
    return DiscreteCurve(points)


def segment(
        half_length: float = 6.0, n: int = 1201, angle: float = 0.0
        ) -> DiscreteCurve:
    """Return an open straight segment centered at the origin.

    Args:
        half_length: Distance from the origin to either end.
        n: Number of vertices.
        angle: Direction of the segment.
    """
    if not half_length > 0.0:
        raise ValueError(
                f'Half length must be positive, got {half_length}')
    positions = np.linspace(-half_length, half_length, n)
    direction = np.array([np.cos(angle), np.sin(angle)])
    return DiscreteCurve(positions[:, None] * direction, closed=False)
