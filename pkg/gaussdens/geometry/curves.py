"""Discrete differential geometry of curves and round spheres."""
import logging
from typing import Tuple

import numpy as np
from scipy.spatial.distance import directed_hausdorff
from scipy.special import gamma

from gaussdens.definitions.geometry import (
        CurveGeometry, DiscreteCurve, Isometry, SphereState)
from gaussdens.util import FloatArray


logger = logging.getLogger(__name__)


def compute_geometry(curve: DiscreteCurve) -> CurveGeometry:
    """Compute normals, curvature and dual lengths of a curve.

    The curvature at a vertex is the signed inverse radius of the
    circle through it and its two neighbours, zero if they are
    collinear. The tangent is the bisector of the two adjacent unit
    edge directions, and the inner normal is the tangent rotated a
    quarter turn counterclockwise. Each vertex gets half of each
    adjacent edge as its dual cell, so dual lengths add up to the
    length exactly.

    The end points of an open curve have zero curvature and the
    direction of their only edge as tangent.

    Args:
        curve: The curve to analyze.

    Return:
        Per-vertex and total geometry of the curve.
    """
    edges = curve.edge_vectors()
    lengths = np.hypot(edges[:, 0], edges[:, 1])
    units = edges / lengths[:, None]

    if curve.closed:
        prev_edges, next_edges = np.roll(edges, 1, axis=0), edges
        prev_lengths, next_lengths = np.roll(lengths, 1), lengths
        prev_units, next_units = np.roll(units, 1, axis=0), units
    else:
        prev_edges, next_edges = edges[:-1], edges[1:]
        prev_lengths, next_lengths = lengths[:-1], lengths[1:]
        prev_units, next_units = units[:-1], units[1:]

    cross = (
            prev_edges[:, 0] * next_edges[:, 1] -
            prev_edges[:, 1] * next_edges[:, 0])
    dot = np.sum(prev_edges * next_edges, axis=1)
    chords = prev_edges + next_edges
    chord_lengths = np.hypot(chords[:, 0], chords[:, 1])

    denominator = prev_lengths * next_lengths * chord_lengths
    safe = denominator > 0.0
    curvature = np.zeros_like(cross)
    curvature[safe] = 2.0 * cross[safe] / denominator[safe]

    tangents = prev_units + next_units
    norms = np.hypot(tangents[:, 0], tangents[:, 1])
    reversed_ = norms < 1e-12
    tangents[reversed_] = next_units[reversed_]
    norms[reversed_] = 1.0
    tangents = tangents / norms[:, None]

    duals = 0.5 * (prev_lengths + next_lengths)
    turning = float(np.sum(np.arctan2(cross, dot)))

    if not curve.closed:
        curvature = np.concatenate([[0.0], curvature, [0.0]])
        tangents = np.concatenate([units[:1], tangents, units[-1:]])
        duals = np.concatenate(
                [[0.5 * lengths[0]], duals, [0.5 * lengths[-1]]])

    normals = np.stack([-tangents[:, 1], tangents[:, 0]], axis=1)

    return CurveGeometry(
            normals, tangents, curvature, duals, lengths, curve.centroid(),
            curve.bounding_box(), turning)


def unit_sphere_area(n: int) -> float:
    """Return the area of the unit n-sphere in (n+1)-space."""
    return float(2.0 * np.pi**((n + 1) / 2) / gamma((n + 1) / 2))


def sphere_geometry(sphere: SphereState) -> Tuple[float, float]:
    """Return the mean curvature and area of a round sphere.

    The mean curvature is n / R with respect to the inner normal.
    """
    mean_curvature = sphere.n / sphere.radius
    area = unit_sphere_area(sphere.n) * sphere.radius**sphere.n
    return mean_curvature, area


def sphere_second_fundamental_norm(sphere: SphereState) -> float:
    """Return |A| = sqrt(n) / R for a round sphere."""
    return float(np.sqrt(sphere.n) / sphere.radius)


def transform(
        curve: DiscreteCurve, isometry: Isometry, scale: float = 1.0
        ) -> DiscreteCurve:
    """Move and scale a curve.

    Each vertex x is mapped to scale * isometry(x). Vertex order and
    orientation are preserved.

    Args:
        curve: The curve to transform.
        isometry: Rigid motion to apply first.
        scale: Positive scale factor to apply afterwards.

    Raises:
        ValueError: If scale is not positive.
    """
    if not scale > 0.0:
        raise ValueError(f'Scale factor must be positive, got {scale}')
    return DiscreteCurve(
            scale * isometry.apply(curve.vertices), closed=curve.closed)


def densify(curve: DiscreteCurve, per_edge: int = 8) -> FloatArray:
    """Return points sampled evenly along each edge of the curve."""
    edges = curve.edge_vectors()
    steps = np.arange(per_edge) / per_edge
    points = (
            curve.vertices[:edges.shape[0], None, :] +
            steps[None, :, None] * edges[:, None, :]).reshape(-1, 2)
    if not curve.closed:
        points = np.concatenate([points, curve.vertices[-1:]])
    return np.asarray(points)


def hausdorff_distance(
        first: DiscreteCurve, second: DiscreteCurve, per_edge: int = 8
        ) -> float:
    """Return the symmetric Hausdorff distance between two curves.

    Both curves are sampled with per_edge points on every edge.
    """
    a = densify(first, per_edge)
    b = densify(second, per_edge)
    return max(directed_hausdorff(a, b)[0], directed_hausdorff(b, a)[0])


def winding_number(curve: DiscreteCurve, point: FloatArray) -> int:
    """Return how often a closed curve winds around a point."""
    relative = curve.vertices - point
    angles = np.arctan2(relative[:, 1], relative[:, 0])
    steps = np.diff(np.concatenate([angles, angles[:1]]))
    steps = (steps + np.pi) % (2.0 * np.pi) - np.pi
    return int(np.round(np.sum(steps) / (2.0 * np.pi)))


def distance_to_unit_circle(curve: DiscreteCurve) -> float:
    """Return the Hausdorff distance from a curve to the unit circle.

    For a closed curve winding around the origin this is exact: every
    point on the circle has a point of the curve on the same ray, so
    the distance is the largest deviation of |y| from 1 along the
    polygon. Otherwise both sets are sampled.
    """
    origin = np.zeros(2)
    if not curve.closed or winding_number(curve, origin) == 0:
        angles = np.linspace(0.0, 2.0 * np.pi, 4096, endpoint=False)
        circle = np.stack([np.cos(angles), np.sin(angles)], axis=1)
        points = densify(curve)
        return max(
                directed_hausdorff(points, circle)[0],
                directed_hausdorff(circle, points)[0])

    starts = curve.vertices
    edges = curve.edge_vectors()
    along = -np.sum(starts * edges, axis=1) / np.sum(edges**2, axis=1)
    feet = starts + np.clip(along, 0.0, 1.0)[:, None] * edges
    nearest = float(np.min(np.hypot(feet[:, 0], feet[:, 1])))
    furthest = float(np.max(np.hypot(starts[:, 0], starts[:, 1])))
    return max(furthest - 1.0, 1.0 - nearest)


def best_line_through_origin(curve: DiscreteCurve) -> FloatArray:
    """Return the unit direction of the best fitting line through 0.

    This is the principal axis of the second moments of the curve,
    taken about the origin.
    """
    points = densify(curve)
    moments = points.T @ points
    _, vectors = np.linalg.eigh(moments)
    return np.asarray(vectors[:, -1])


def distance_to_line_through_origin(curve: DiscreteCurve) -> float:
    """Return how far a curve strays from its best line through 0.

    This is the largest distance of a point of the curve to the line;
    an infinite line is never close to a bounded curve the other way
    around.
    """
    direction = best_line_through_origin(curve)
    normal = np.array([-direction[1], direction[0]])
    return float(np.max(np.abs(curve.vertices @ normal)))
