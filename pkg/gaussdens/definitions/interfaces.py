"""Widely used interface definitions."""
from typing import Any

from gaussdens.definitions.geometry import DiscreteCurve
from gaussdens.definitions.kernels import KernelParams
from gaussdens.definitions.reports import DensityReport, LimitEstimate
from gaussdens.definitions.trajectory import Trajectory


class IDensityEstimator:
    """Computes Gaussian densities of curves.

    Singularity analysis and breather checks take one of these, so
    that the search options used are decided in a single place.
    """
    def huisken_functional(
            self, curve: DiscreteCurve, params: KernelParams) -> float:
        """Evaluate the Huisken functional.

        Args:
            curve: The curve to integrate over.
            params: Center and scale of the Gaussian.

        Return:
            The Gaussian weighted length of the curve.
        """
        raise NotImplementedError()

    def shrinker_residual(
            self, curve: DiscreteCurve, params: KernelParams) -> float:
        """Evaluate the weighted self-shrinker residual.

        Args:
            curve: The curve to integrate over.
            params: Center and scale of the Gaussian.

        Return:
            The Gaussian weighted integral of the squared residual.
        """
        raise NotImplementedError()

    def sigma(
            self, curve: DiscreteCurve, tau: float, **kwargs: Any
            ) -> DensityReport:
        """Maximize the Huisken functional over centers.

        Args:
            curve: The curve to integrate over.
            tau: The scale.
            kwargs: Implementation specific search hints.

        Return:
            The maximum with its maximizer.
        """
        raise NotImplementedError()

    def sigma_estimate(self, trajectory: Trajectory) -> LimitEstimate:
        """Estimate the limit of sigma at the singular time.

        Args:
            trajectory: A flow with an estimated singular time.

        Return:
            The extrapolated limit.
        """
        raise NotImplementedError()
