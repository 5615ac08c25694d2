"""Flow trajectories and rescaled frames."""
from typing import List, Optional, Union

import numpy as np

from gaussdens.definitions.geometry import DiscreteCurve, SphereState
from gaussdens.util import FloatArray


FlowState = Union[DiscreteCurve, SphereState]


class Frame:
    """A recorded state of a flow.

    Attributes:
        t: Time of the frame.
        state: The curve or sphere at that time.
        max_curvature: Largest absolute curvature.
        min_edge: Shortest edge, or the radius for a sphere.
    """
    def __init__(
            self, t: float, state: FlowState, max_curvature: float,
            min_edge: float) -> None:
        """Create a Frame."""
        self.t = float(t)
        self.state = state
        self.max_curvature = float(max_curvature)
        self.min_edge = float(min_edge)

    def __repr__(self) -> str:
        """Returns a string representation of the object."""
        return f'Frame(t={self.t}, max_curvature={self.max_curvature})'

    def curve(self) -> DiscreteCurve:
        """Return the state as a curve.

        Raises:
            TypeError: If this is a sphere frame.
        """
        if not isinstance(self.state, DiscreteCurve):
            raise TypeError(f'Frame at t={self.t} does not hold a curve')
        return self.state


class StepDiagnostics:
    """Bookkeeping for a single accepted flow step.

    Attributes:
        t: Time after the step.
        dt: Time step used.
        max_k: Largest absolute curvature after the step.
        min_edge: Shortest edge after the step.
        length: Curve length after the step.
    """
    def __init__(
            self, t: float, dt: float, max_k: float, min_edge: float,
            length: float) -> None:
        """Create a StepDiagnostics record."""
        self.t = t
        self.dt = dt
        self.max_k = max_k
        self.min_edge = min_edge
        self.length = length


class SingularTimeEstimate:
    """Estimate of the time at which a flow becomes singular.

    Attributes:
        value: Estimated singular time T.
        uncertainty: One standard deviation of the fit.
        type_i_constant: Fitted constant in
            sup|k| ~ C / sqrt(2 (T - t)).
    """
    def __init__(
            self, value: float, uncertainty: float,
            type_i_constant: float) -> None:
        """Create a SingularTimeEstimate."""
        self.value = float(value)
        self.uncertainty = float(uncertainty)
        self.type_i_constant = float(type_i_constant)

    def __repr__(self) -> str:
        """Returns a string representation of the object."""
        return f'SingularTimeEstimate({self.value} ± {self.uncertainty})'


class Trajectory:
    """A time-ordered sequence of flow frames.

    Attributes:
        frames: Frames in strictly increasing time order, starting at
            t = 0.
        estimate: Estimated singular time, if available.
        steps: Per-step diagnostics.
        flagged: Whether the run ended abnormally.
        reason: Description of what went wrong, if flagged.
    """
    def __init__(
            self, frames: List[Frame],
            estimate: Optional[SingularTimeEstimate] = None,
            steps: Optional[List[StepDiagnostics]] = None,
            flagged: bool = False, reason: str = '') -> None:
        """Create a Trajectory.

        Raises:
            ValueError: If there are no frames, the first frame is not
                at t = 0, or times are not strictly increasing.
        """
        if not frames:
            raise ValueError('A trajectory needs at least one frame')
        if frames[0].t != 0.0:
            raise ValueError(
                    f'Trajectories start at t = 0, got {frames[0].t}')
        times = np.array([frame.t for frame in frames])
        if np.any(np.diff(times) <= 0.0):
            raise ValueError('Frame times must be strictly increasing')

        self.frames = frames
        self.estimate = estimate
        self.steps = steps if steps is not None else list()
        self.flagged = flagged
        self.reason = reason

    def __repr__(self) -> str:
        """Returns a string representation of the object."""
        return (
                f'Trajectory({len(self.frames)} frames,'
                f' estimate={self.estimate}, flagged={self.flagged})')

    def times(self) -> FloatArray:
        """Return the frame times as an array."""
        return np.array([frame.t for frame in self.frames])

    def singular_time(self) -> float:
        """Return the estimated singular time.

        Raises:
            RuntimeError: If there is no estimate.
        """
        if self.estimate is None:
            raise RuntimeError('Trajectory has no singular time estimate')
        return self.estimate.value

    def frame_at(self, t: float, tolerance: float = 1e-12) -> Frame:
        """Return the frame recorded at time t.

        Raises:
            KeyError: If no frame was recorded within tolerance of t.
        """
        times = self.times()
        index = int(np.argmin(np.abs(times - t)))
        if abs(times[index] - t) > tolerance * max(1.0, abs(t)):
            raise KeyError(f'No frame recorded at t={t}')
        return self.frames[index]

    def final(self) -> Frame:
        """Return the last frame."""
        return self.frames[-1]


class RescaledFrame:
    """A flow frame after parabolic rescaling around a center.

    The vertices satisfy y = (x - center) * scale with
    scale = 1 / sqrt(2 (T - t)), vertex by vertex.

    Attributes:
        s: Rescaled time, -log(T - t) / 2.
        curve: The rescaled curve.
        t: Time of the source frame.
        center: Center used for the rescaling.
        scale: Factor applied to positions.
    """
    def __init__(
            self, s: float, curve: DiscreteCurve, t: float,
            center: FloatArray, scale: float) -> None:
        """Create a RescaledFrame."""
        self.s = float(s)
        self.curve = curve
        self.t = float(t)
        self.center = center
        self.scale = float(scale)

    def __repr__(self) -> str:
        """Returns a string representation of the object."""
        return f'RescaledFrame(s={self.s}, t={self.t})'

    def source_vertices(self) -> FloatArray:
        """Map the vertices back to the coordinates of the source."""
        return np.asarray(self.curve.vertices / self.scale + self.center)
