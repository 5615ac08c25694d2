"""Results of density computations and singularity analysis."""
from enum import Enum
from typing import List, Optional

import numpy as np

from gaussdens.definitions.geometry import Isometry
from gaussdens.definitions.trajectory import RescaledFrame
from gaussdens.util import FloatArray


class DensityReport:
    """The value and maximizer of a Gaussian density quantity.

    Used for Huisken functional maximizations over centers (sigma)
    and over centers and scales (nu).

    Attributes:
        value: The maximal value found.
        center: The maximizing center p*.
        tau: The scale, either given or the maximizing scale tau*.
        residual: Self-shrinker residual at (p*, tau).
        iterations: Total number of local optimizer iterations.
        starts: Number of starting points used.
        converged: Whether the local searches converged.
        quadrature_error: Estimate of the quadrature error in value.
        bound: Upper bound length / (4 pi tau)^(n/2), if known.
        flagged: Whether something went wrong.
        reason: What went wrong, if flagged.
    """
    def __init__(
            self, value: float, center: FloatArray, tau: float,
            residual: float = 0.0, iterations: int = 0, starts: int = 0,
            converged: bool = True, quadrature_error: float = 0.0,
            bound: Optional[float] = None, flagged: bool = False,
            reason: str = '') -> None:
        """Create a DensityReport."""
        self.value = float(value)
        self.center = np.asarray(center, dtype=float)
        self.tau = float(tau)
        self.residual = float(residual)
        self.iterations = iterations
        self.starts = starts
        self.converged = converged
        self.quadrature_error = float(quadrature_error)
        self.bound = bound
        self.flagged = flagged
        self.reason = reason

    def __repr__(self) -> str:
        """Returns a string representation of the object."""
        return (
                f'DensityReport(value={self.value},'
                f' center={self.center.tolist()}, tau={self.tau},'
                f' flagged={self.flagged})')


class LimitEstimate:
    """An extrapolated limit of a density along a flow.

    Attributes:
        value: The extrapolated value at the singular time.
        times: Times of the frames used.
        values: Density values at those frames.
        flagged: Whether too few frames were available.
        reason: What went wrong, if flagged.
    """
    def __init__(
            self, value: float, times: List[float], values: List[float],
            flagged: bool = False, reason: str = '') -> None:
        """Create a LimitEstimate."""
        self.value = float(value)
        self.times = times
        self.values = values
        self.flagged = flagged
        self.reason = reason

    def __repr__(self) -> str:
        """Returns a string representation of the object."""
        return f'LimitEstimate({self.value}, flagged={self.flagged})'

    def exceeds_one(self, tolerance: float = 0.0) -> bool:
        """Whether the limit signals a singularity.

        Args:
            tolerance: Margin by which the value must exceed one.
        """
        return self.value > 1.0 + tolerance


class SingularityType(Enum):
    """Kind of singularity reached by a flow."""
    TYPE_I = 'TypeI'
    TYPE_II = 'TypeII'
    UNRESOLVED = 'Unresolved'


class LimitMatch(Enum):
    """Self-shrinker the rescaled flow was found to approach."""
    UNIT_CIRCLE = 'UnitCircle'
    LINE = 'Line'
    NONE = 'None'


class SingularityReport:
    """Outcome of singularity analysis of a trajectory.

    Attributes:
        type: Type of the singularity.
        type_i_constant: Sup of sup|k| sqrt(2 (T - t)) over the frames
            close to the singular time.
        global_type_i_constant: The same sup over all frames.
        limit_match: Which self-shrinker the final rescaled frame
            resembles.
        hausdorff: Distance of the final rescaled frame to the matched
            shrinker, or to the unit circle if nothing matched.
        line_distance: Distance to the best line through the origin.
        sigma: Limit of sigma along the flow.
        limit_density: Gaussian density of the final rescaled frame.
        residual: Self-shrinker residual of the final rescaled frame.
        residual_path: Residual of each rescaled frame, in order.
        center_path: Rescaling center of each rescaled frame.
        singular_time: The singular time used.
        flagged: Whether part of the analysis was unreliable.
        reason: What was unreliable, if flagged.
        rescaled_frames: The rescaled frames, in time order.
    """
    def __init__(
            self, type: SingularityType, type_i_constant: float,
            global_type_i_constant: float, limit_match: LimitMatch,
            hausdorff: float, line_distance: float, sigma: float,
            limit_density: float, residual: float,
            residual_path: List[float], center_path: List[FloatArray],
            singular_time: float, flagged: bool = False, reason: str = '',
            rescaled_frames: Optional[List[RescaledFrame]] = None
            ) -> None:
        """Create a SingularityReport."""
        self.type = type
        self.type_i_constant = type_i_constant
        self.global_type_i_constant = global_type_i_constant
        self.limit_match = limit_match
        self.hausdorff = hausdorff
        self.line_distance = line_distance
        self.sigma = sigma
        self.limit_density = limit_density
        self.residual = residual
        self.residual_path = residual_path
        self.center_path = center_path
        self.singular_time = singular_time
        self.flagged = flagged
        self.reason = reason
        self.rescaled_frames = (
                rescaled_frames if rescaled_frames is not None else [])

    def __repr__(self) -> str:
        """Returns a string representation of the object."""
        return (
                f'SingularityReport({self.type.value},'
                f' C={self.type_i_constant},'
                f' limit={self.limit_match.value})')


class BreatherHypothesis:
    """A guess that a flow returns to a scaled copy of itself.

    The hypothesis is that the curve at time t_bar equals the initial
    curve moved by the isometry and then scaled by the scale factor.

    Attributes:
        t_bar: Time of return, positive.
        scale: Scale factor lambda, in (0, 1).
        isometry: Rigid motion L.
    """
    def __init__(
            self, t_bar: float, scale: float,
            isometry: Optional[Isometry] = None) -> None:
        """Create a BreatherHypothesis.

        Raises:
            ValueError: If t_bar <= 0 or scale is not in (0, 1).
        """
        if not t_bar > 0.0:
            raise ValueError(f'Return time must be positive, got {t_bar}')
        if not 0.0 < scale < 1.0:
            raise ValueError(
                    f'Compact breathers shrink, scale must be in (0, 1),'
                    f' got {scale}')
        self.t_bar = float(t_bar)
        self.scale = float(scale)
        self.isometry = isometry if isometry is not None else Isometry()

    def __repr__(self) -> str:
        """Returns a string representation of the object."""
        return (
                f'BreatherHypothesis(t_bar={self.t_bar},'
                f' scale={self.scale}, isometry={self.isometry})')

    def clock(self) -> float:
        """Return C = t_bar / (1 - scale^2).

        With this choice, sigma at scale C of the initial curve must
        equal sigma at scale C - t_bar of the curve at t_bar.
        """
        return self.t_bar / (1.0 - self.scale**2)


class BreatherResult:
    """Outcome of testing a breather hypothesis.

    Attributes:
        is_breather: Whether the shape matched and the residual
            vanished.
        residual_integral: Time integral of the shrinker residual.
        sigma_gap: sigma(initial, C) - sigma(at t_bar, C - t_bar).
        shape_distance: Hausdorff distance between the curve at t_bar
            and the hypothesized image of the initial curve.
        shape_match: Whether shape_distance was within tolerance.
        clock: The value C used.
    """
    def __init__(
            self, is_breather: bool, residual_integral: float,
            sigma_gap: float, shape_distance: float, shape_match: bool,
            clock: float) -> None:
        """Create a BreatherResult."""
        self.is_breather = is_breather
        self.residual_integral = residual_integral
        self.sigma_gap = sigma_gap
        self.shape_distance = shape_distance
        self.shape_match = shape_match
        self.clock = clock

    def __repr__(self) -> str:
        """Returns a string representation of the object."""
        return (
                f'BreatherResult(is_breather={self.is_breather},'
                f' residual_integral={self.residual_integral},'
                f' sigma_gap={self.sigma_gap})')
