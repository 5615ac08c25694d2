"""Gaussian kernels and mixtures of them."""
from typing import Any, Iterable, Tuple

import numpy as np

from gaussdens.util import as_point, FloatArray


class KernelParams:
    """Center and scale of a Gaussian kernel.

    Along a flow, the scale is the time C - t left until the clock of
    the kernel runs out.

    Attributes:
        center: The center p.
        tau: The scale, positive.
    """
    def __init__(self, center: Any, tau: float) -> None:
        """Create KernelParams.

        Args:
            center: The center point, any dimension.
            tau: The scale.

        Raises:
            ValueError: If tau is not positive.
        """
        if not np.isfinite(tau) or tau <= 0.0:
            raise ValueError(f'Kernel scale must be positive, got {tau}')
        point = np.array(center, dtype=float).reshape(-1)
        self.center = as_point(point, point.shape[0])
        self.tau = float(tau)

    def __repr__(self) -> str:
        """Returns a string representation of the object."""
        return (
                f'KernelParams(center={self.center.tolist()},'
                f' tau={self.tau})')

    def ambient(self) -> int:
        """Return the dimension of the space the center lives in."""
        return int(self.center.shape[0])


class GaussianMixture:
    """A positive backward heat solution built from heat kernels.

    This is the heat kernel at scale tau convolved with a finite
    probability measure on the atoms. At time t in [0, tau) its value
    at x is the weighted sum of heat kernels centered at the atoms
    with scale tau - t.

    Attributes:
        centers: (M, d) array of atom positions.
        weights: (M,) array of positive weights summing to one.
        tau: The base scale.
        ambient: The dimension d of the space.
    """
    def __init__(self, centers: Any, weights: Any, tau: float) -> None:
        """Create a GaussianMixture.

        Weights that sum to one within 1e-9 are renormalized to sum to
        one exactly.

        Args:
            centers: Atom positions, convertible to an (M, d) array.
            weights: One positive weight per atom.
            tau: The base scale, positive.

        Raises:
            ValueError: If the inputs are inconsistent, weights are
                not positive or do not sum to one, or tau is not
                positive.
        """
        points = np.array(centers, dtype=float)
        if points.ndim != 2 or points.shape[0] < 1:
            raise ValueError(
                    f'Expected an (M, d) array of atoms, got shape'
                    f' {points.shape}')
        masses = np.array(weights, dtype=float).reshape(-1)
        if masses.shape[0] != points.shape[0]:
            raise ValueError(
                    f'Got {points.shape[0]} atoms but {masses.shape[0]}'
                    ' weights')
        if not np.all(np.isfinite(points)):
            raise ValueError('Atom positions must be finite')
        if np.any(masses <= 0.0) or not np.all(np.isfinite(masses)):
            raise ValueError(f'Atom weights must be positive, got {masses}')
        total = float(np.sum(masses))
        if abs(total - 1.0) > 1e-9:
            raise ValueError(f'Atom weights must sum to 1, got {total}')
        if not np.isfinite(tau) or tau <= 0.0:
            raise ValueError(f'Mixture scale must be positive, got {tau}')

        masses = masses / total
        points.flags.writeable = False
        masses.flags.writeable = False
        self.centers = points
        self.weights = masses
        self.tau = float(tau)
        self.ambient = int(points.shape[1])

    def __repr__(self) -> str:
        """Returns a string representation of the object."""
        return (
                f'GaussianMixture({self.atom_count()} atoms,'
                f' ambient={self.ambient}, tau={self.tau})')

    @classmethod
    def single(cls, params: KernelParams) -> 'GaussianMixture':
        """Return the mixture with a single atom.

        This is the backward heat kernel with the given center and
        scale.
        """
        return cls([params.center], [1.0], params.tau)

    def atom_count(self) -> int:
        """Return the number of atoms."""
        return int(self.centers.shape[0])

    def atoms(self) -> Iterable[Tuple[FloatArray, float]]:
        """Iterate over (center, weight) pairs."""
        for center, weight in zip(self.centers, self.weights):
            yield center, float(weight)

    def kernel(self, index: int, t: float = 0.0) -> KernelParams:
        """Return the kernel of one atom at time t."""
        return KernelParams(self.centers[index], self.tau - t)
