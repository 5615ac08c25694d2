"""Different kinds of errors that may occur."""


class ValidationError(Exception):
    """Signals that an input file or object failed to validate."""
    pass


class StepRejected(RuntimeError):
    """Signals that a flow step would damage the polygon.

    Raised when a step would make consecutive vertices coincide or
    reverse the direction of an edge. The caller is expected to retry
    with a smaller time step.

    Attributes:
        dt: The time step that was attempted.
        reason: Human readable description of the problem.
    """
    def __init__(self, dt: float, reason: str) -> None:
        """Create a StepRejected error.

        Args:
            dt: The time step that was attempted.
            reason: Human readable description of the problem.
        """
        super().__init__(f'Step with dt={dt} rejected: {reason}')
        self.dt = dt
        self.reason = reason
