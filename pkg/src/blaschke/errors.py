"""Exception types shared across the package."""


class ParameterError(ValueError):
    """An argument lies outside the domain of the requested operation."""


class NumericFailure(RuntimeError):
    """An iterative method could not meet its accuracy contract.

    Carries the best residual reached and, where useful, a snapshot of the
    solver state for diagnosis.
    """

    def __init__(self, message, residual=None, state=None):
        super().__init__(message)
        self.residual = residual
        self.state = state


class VerificationFailure(RuntimeError):
    """A mathematical identity or invariant check did not hold."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report
