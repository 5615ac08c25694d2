"""Curves, spheres and rigid motions of the plane."""
from typing import Any, Optional, Tuple

import numpy as np
from scipy.spatial.distance import pdist

from gaussdens.util import as_point, FloatArray


class DiscreteCurve:
    """A polygonal curve in the plane.

    Closed curves are implicitly closed, i.e. the last vertex connects
    back to the first one, and are oriented counterclockwise on
    construction so that the left normal points inwards. Open curves
    are kept as given; they are used as test segments, not
    evolved.

    Attributes:
        vertices: Read-only (N, 2) array of vertex positions.
        closed: Whether the last vertex connects to the first.
        n: Intrinsic dimension, always 1.
        ambient: Ambient dimension, always 2.
    """
    n = 1
    ambient = 2

    def __init__(self, vertices: Any, closed: bool = True) -> None:
        """Create a DiscreteCurve.

        Args:
            vertices: Sequence of points, anything numpy can convert
                to an (N, 2) float array.
            closed: Whether the curve is closed.

        Raises:
            ValueError: If there are too few vertices, coordinates are
                not finite, or two consecutive vertices coincide.
        """
        points = np.array(vertices, dtype=float)
        if points.ndim != 2 or points.shape[1] != 2:
            raise ValueError(
                    f'Expected an (N, 2) array of vertices, got shape'
                    f' {points.shape}')

        minimum = 3 if closed else 2
        if points.shape[0] < minimum:
            raise ValueError(
                    f'A {"closed" if closed else "open"} curve needs at'
                    f' least {minimum} vertices, got {points.shape[0]}')

        if not np.all(np.isfinite(points)):
            raise ValueError('Curve vertices must be finite')

        edges = _edge_vectors(points, closed)
        lengths = np.hypot(edges[:, 0], edges[:, 1])
        if np.any(lengths == 0.0):
            index = int(np.argmin(lengths))
            raise ValueError(
                    f'Duplicate consecutive vertices at index {index}')

        if closed and _shoelace(points) < 0.0:
            # reverse, keeping vertex 0 in place
            points = np.concatenate([points[:1], points[:0:-1]])

        points.flags.writeable = False
        self.vertices = points
        self.closed = closed

    def __repr__(self) -> str:
        """Returns a string representation of the object."""
        kind = 'closed' if self.closed else 'open'
        return f'DiscreteCurve({self.vertex_count()} vertices, {kind})'

    def vertex_count(self) -> int:
        """Return the number of vertices."""
        return int(self.vertices.shape[0])

    def edge_vectors(self) -> FloatArray:
        """Return the edge vectors, edge i runs from vertex i to i + 1.

        A closed curve has as many edges as vertices, an open one has
        one less.
        """
        return _edge_vectors(self.vertices, self.closed)

    def edge_lengths(self) -> FloatArray:
        """Return the lengths of the edges."""
        edges = self.edge_vectors()
        return np.hypot(edges[:, 0], edges[:, 1])

    def length(self) -> float:
        """Return the total length of the curve."""
        return float(np.sum(self.edge_lengths()))

    def signed_area(self) -> float:
        """Return the signed enclosed area.

        This is positive for closed curves after construction, and
        counts multiply covered regions multiple times. Open curves
        enclose nothing and return 0.
        """
        if not self.closed:
            return 0.0
        return _shoelace(self.vertices)

    def centroid(self) -> FloatArray:
        """Return the arc-length weighted centroid of the curve."""
        lengths = self.edge_lengths()
        starts = self.vertices[:lengths.shape[0]]
        midpoints = starts + 0.5 * self.edge_vectors()
        return np.asarray(
                np.sum(midpoints * lengths[:, None], axis=0) /
                np.sum(lengths))

    def bounding_box(self) -> Tuple[FloatArray, FloatArray]:
        """Return the lower left and upper right bounding box corners."""
        return self.vertices.min(axis=0), self.vertices.max(axis=0)

    def diameter(self) -> float:
        """Return the largest distance between two vertices."""
        return float(np.max(pdist(self.vertices)))

    def covered(self, multiplicity: int) -> 'DiscreteCurve':
        """Return this curve traversed several times.

        Args:
            multiplicity: Number of times to run around the curve.

        Raises:
            ValueError: If the curve is open or multiplicity < 1.
        """
        if not self.closed:
            raise ValueError('Only closed curves can be covered')
        if multiplicity < 1:
            raise ValueError(
                    f'Multiplicity must be at least 1, got {multiplicity}')
        return DiscreteCurve(np.tile(self.vertices, (multiplicity, 1)))


def _edge_vectors(points: FloatArray, closed: bool) -> FloatArray:
    if closed:
        return np.asarray(np.roll(points, -1, axis=0) - points)
    return np.asarray(np.diff(points, axis=0))


def _shoelace(points: FloatArray) -> float:
    following = np.roll(points, -1, axis=0)
    return 0.5 * float(np.sum(
            points[:, 0] * following[:, 1] - following[:, 0] * points[:, 1]))


class SphereState:
    """A round n-sphere in (n+1)-dimensional space.

    Attributes:
        n: Intrinsic dimension.
        radius: Radius of the sphere.
        center: Center of the sphere, a point with n + 1 coordinates.
    """
    def __init__(
            self, n: int, radius: float, center: Optional[Any] = None
            ) -> None:
        """Create a SphereState.

        Args:
            n: Intrinsic dimension, at least 1.
            radius: Radius, positive.
            center: Center, defaults to the origin.

        Raises:
            ValueError: If n < 1, radius is not positive, or the
                center has the wrong dimension.
        """
        if int(n) != n or n < 1:
            raise ValueError(f'Sphere dimension must be >= 1, got {n}')
        if not np.isfinite(radius) or radius <= 0.0:
            raise ValueError(f'Sphere radius must be positive, got {radius}')

        self.n = int(n)
        self.radius = float(radius)
        if center is None:
            center = np.zeros(self.n + 1)
        self.center = as_point(center, self.n + 1)

    def __repr__(self) -> str:
        """Returns a string representation of the object."""
        return f'SphereState(n={self.n}, radius={self.radius})'

    def ambient(self) -> int:
        """Return the dimension of the surrounding space."""
        return self.n + 1


class CurveGeometry:
    """Discrete differential geometry of a curve.

    Per-vertex quantities are arrays with one row per vertex.

    Attributes:
        normals: (N, 2) unit inner normals.
        tangents: (N, 2) unit tangents in the direction of traversal.
        curvature: (N,) signed curvature, positive where the curve
            bends towards its inner normal.
        dual_lengths: (N,) length of the dual cell of each vertex,
            i.e. the weight of the vertex in the measure.
        edge_lengths: Lengths of the edges.
        length: Total length.
        centroid: Arc-length weighted centroid.
        bounding_box: Lower left and upper right corners.
        total_turning: Sum of signed exterior angles, 2π for a simple
            closed counterclockwise polygon.
    """
    def __init__(
            self, normals: FloatArray, tangents: FloatArray,
            curvature: FloatArray, dual_lengths: FloatArray,
            edge_lengths: FloatArray, centroid: FloatArray,
            bounding_box: Tuple[FloatArray, FloatArray],
            total_turning: float) -> None:
        """Create a CurveGeometry.

        Use gaussdens.geometry.curves.compute_geometry() rather than
        calling this directly.
        """
        self.normals = normals
        self.tangents = tangents
        self.curvature = curvature
        self.dual_lengths = dual_lengths
        self.edge_lengths = edge_lengths
        self.length = float(np.sum(edge_lengths))
        self.centroid = centroid
        self.bounding_box = bounding_box
        self.total_turning = total_turning

    def max_curvature(self) -> float:
        """Return the largest absolute curvature."""
        return float(np.max(np.abs(self.curvature)))


class Isometry:
    """An orientation preserving rigid motion of the plane.

    Points are rotated about the origin first, then translated.

    Attributes:
        angle: Rotation angle in radians, counterclockwise.
        translation: Translation vector.
    """
    def __init__(self, angle: float = 0.0, translation: Any = (0.0, 0.0)
                 ) -> None:
        """Create an Isometry.

        Args:
            angle: Rotation angle in radians, counterclockwise.
            translation: Translation applied after the rotation.
        """
        if not np.isfinite(angle):
            raise ValueError(f'Invalid rotation angle {angle}')
        self.angle = float(angle)
        self.translation = as_point(translation, 2)

    def __repr__(self) -> str:
        """Returns a string representation of the object."""
        return (
                f'Isometry(angle={self.angle},'
                f' translation={self.translation.tolist()})')

    @classmethod
    def identity(cls) -> 'Isometry':
        """Return the identity motion."""
        return cls()

    def rotation(self) -> FloatArray:
        """Return the 2x2 rotation matrix."""
        c, s = np.cos(self.angle), np.sin(self.angle)
        return np.array([[c, -s], [s, c]])

    def apply(self, points: Any) -> FloatArray:
        """Apply the motion to an (N, 2) array or a single point."""
        array = np.asarray(points, dtype=float)
        return np.asarray(array @ self.rotation().T + self.translation)

    def inverse(self) -> 'Isometry':
        """Return the inverse motion."""
        back = np.array([[np.cos(self.angle), np.sin(self.angle)],
                         [-np.sin(self.angle), np.cos(self.angle)]])
        return Isometry(-self.angle, -(back @ self.translation))
