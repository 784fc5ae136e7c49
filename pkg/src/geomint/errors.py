"""Exception types raised by geomint."""


class GeomintError(Exception):
    """Base class for all library errors."""


class GroupMismatchError(GeomintError, ValueError):
    """Operands belong to different groups (or have incompatible shapes)."""


class OutOfDomain(GeomintError, ValueError):
    """An argument left the injectivity domain of a tau map.

    Usually means the step size is too large for the current state.
    """

    def __init__(self, message, step_index=None):
        super().__init__(message)
        self.step_index = step_index


class SolverDiverged(GeomintError, RuntimeError):
    """An implicit solve did not reach its tolerance."""

    def __init__(self, message, residual_norm=float("nan"), step_index=None):
        super().__init__(message)
        self.residual_norm = residual_norm
        self.step_index = step_index


class StepSizeUnderflow(GeomintError, RuntimeError):
    """The adaptive reference integrator could not find an acceptable step."""


class ConfigError(GeomintError, ValueError):
    """A run configuration failed validation."""
