########################
# Exception Hierarchy  #
########################

from typing import Optional


class CurvantError(Exception):
    """
    Base exception class for curvant-specific errors.

    All custom exceptions for the antenna design toolkit inherit from this
    class, allowing callers (the CLI in particular) to handle them uniformly.
    """
    pass


class ValidationError(CurvantError):
    """
    Raised when input validation fails.

    Triggered when a design lies outside its bounds, an angular grid is too
    coarse, or an argument does not meet the documented preconditions.
    """
    pass


class GeometryError(ValidationError):
    """
    Raised when a wire model cannot be built or violates thin-wire rules.

    Examples are overlapping dipoles, zero-length segments, segments that are
    too long for the design frequency, or a port index past the segment list.
    """
    pass


class SolverError(CurvantError):
    """
    Raised when the method-of-moments solve fails.

    Covers singular or ill-conditioned impedance matrices and solutions with
    no current flowing at the ports. ``condition`` carries the reciprocal
    condition estimate when one is available.
    """

    def __init__(self, message: str, condition: Optional[float] = None):
        super().__init__(message)
        self.condition = condition


class TrainingError(CurvantError):
    """
    Raised when the Q-learning loop cannot continue.

    Used for non-finite training losses and for sampling from an empty
    replay buffer.
    """
    pass


class CheckpointError(CurvantError):
    """
    Raised when a checkpoint cannot be read or does not fit the network.

    Bad magic bytes, truncated files, checksum mismatches and network shape
    mismatches all end up here.
    """
    pass


class ConfigurationError(CurvantError):
    """
    Raised when run configuration is invalid.

    Triggered when a config file is malformed, missing, or holds values that
    fail validation.
    """
    pass
