"""Quadrature rules on curves and in the full space."""
import itertools
from typing import Any, Tuple

import numpy as np
from numpy.polynomial.hermite import hermgauss
from numpy.polynomial.legendre import leggauss

from gaussdens.definitions.geometry import DiscreteCurve
from gaussdens.util import FloatArray


class CurveQuadrature:
    """Gauss-Legendre quadrature along the edges of a curve.

    Each edge gets `order` nodes. Values given per vertex are
    interpolated linearly along the edges.

    Attributes:
        order: Number of nodes per edge.
        points: (E * order, 2) array of node positions.
        weights: (E * order,) array of weights, summing to the length.
        parameters: Position of each node along its edge, in (0, 1).
    """
    def __init__(self, curve: DiscreteCurve, order: int = 4) -> None:
        """Create a quadrature rule for a curve.

        Args:
            curve: The curve to integrate over.
            order: Number of nodes per edge, from 1 to 10.

        Raises:
            ValueError: If the order is out of range.
        """
        if not 1 <= order <= 10:
            raise ValueError(
                    f'Quadrature order must be in 1..10, got {order}')

        nodes, node_weights = leggauss(order)
        parameters = 0.5 * (nodes + 1.0)

        edges = curve.edge_vectors()
        lengths = np.hypot(edges[:, 0], edges[:, 1])
        starts = curve.vertices[:edges.shape[0]]

        self.order = order
        self.parameters = parameters
        self._edge_count = edges.shape[0]
        self._vertex_count = curve.vertex_count()
        self.points = (
                starts[:, None, :] +
                parameters[None, :, None] * edges[:, None, :]
                ).reshape(-1, 2)
        self.weights = (
                0.5 * lengths[:, None] * node_weights[None, :]).reshape(-1)

    def interpolate(self, vertex_values: Any) -> FloatArray:
        """Interpolate per-vertex values to the nodes.

        Args:
            vertex_values: Array with one entry or row per vertex.

        Return:
            Array with one entry or row per node.
        """
        values = np.asarray(vertex_values, dtype=float)
        first = values[:self._edge_count]
        second = np.roll(values, -1, axis=0)[:self._edge_count]
        s = self.parameters.reshape(
                (1, -1) + (1,) * (values.ndim - 1))
        nodal = (1.0 - s) * first[:, None] + s * second[:, None]
        return np.asarray(nodal.reshape((-1,) + values.shape[1:]))

    def integrate(self, node_values: Any) -> float:
        """Integrate values given at the nodes."""
        return float(np.dot(self.weights, np.asarray(node_values)))


def hermite_rule(
        center: Any, width: float, order: int = 24
        ) -> Tuple[FloatArray, FloatArray]:
    """Tensor Gauss-Hermite rule for integrals over the full space.

    The rule is exact for functions of the form
    exp(-|x - center|^2 / width^2) times a polynomial of degree up to
    2 * order - 1 in each coordinate.

    Args:
        center: Where to center the rule.
        width: Length scale of the integrand.
        order: Number of nodes per coordinate.

    Return:
        Points (order^d, d) and weights such that the integral of f is
        approximately the weighted sum of f at the points.
    """
    origin = np.asarray(center, dtype=float).reshape(-1)
    dimension = origin.shape[0]
    nodes, node_weights = hermgauss(order)
    # undo the weight function, so plain integrals come out
    node_weights = node_weights * np.exp(nodes**2)

    points = np.array(list(itertools.product(nodes, repeat=dimension)))
    weights = np.prod(np.array(list(itertools.product(
            node_weights, repeat=dimension))), axis=1)
    return origin + width * points, weights * width**dimension
