"""Density computations bundled behind a single interface."""
from typing import Any, Optional

from gaussdens.definitions.geometry import DiscreteCurve
from gaussdens.definitions.interfaces import IDensityEstimator
from gaussdens.definitions.kernels import KernelParams
from gaussdens.definitions.reports import DensityReport, LimitEstimate
from gaussdens.definitions.trajectory import Trajectory
from gaussdens.density import huisken
from gaussdens.density.limits import sigma_estimate
from gaussdens.density.maximization import SearchOptions, sigma


class DensityCalculator(IDensityEstimator):
    """Computes densities with a fixed set of search options."""
    def __init__(self, options: Optional[SearchOptions] = None) -> None:
        """Create a DensityCalculator.

        Args:
            options: Search settings, defaults if not given.
        """
        self.options = options if options is not None else SearchOptions()

    def huisken_functional(
            self, curve: DiscreteCurve, params: KernelParams) -> float:
        """Evaluate the Huisken functional, see IDensityEstimator."""
        return huisken.huisken_functional(curve, params, self.options.order)

    def shrinker_residual(
            self, curve: DiscreteCurve, params: KernelParams) -> float:
        """Evaluate the shrinker residual, see IDensityEstimator."""
        return huisken.shrinker_residual(curve, params, self.options.order)

    def sigma(
            self, curve: DiscreteCurve, tau: float, **kwargs: Any
            ) -> DensityReport:
        """Maximize over centers, see IDensityEstimator.

        Accepts a `hints` keyword with extra starting centers.
        """
        return sigma(curve, tau, self.options, kwargs.get('hints', ()))

    def sigma_estimate(self, trajectory: Trajectory) -> LimitEstimate:
        """Extrapolate sigma to the singular time, see IDensityEstimator."""
        return sigma_estimate(trajectory, self.options)
