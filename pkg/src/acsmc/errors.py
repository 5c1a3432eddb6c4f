"""Exception types shared across the package."""


class AcsmcError(Exception):
    """Base class for all package-specific errors."""


class InvalidInputError(AcsmcError, ValueError):
    """Non-finite or dimensionally inconsistent user input."""


class ConfigError(AcsmcError, ValueError):
    """Malformed or inconsistent configuration."""


class NotPositiveDefiniteError(AcsmcError):
    """A matrix required to be (symmetric) positive definite is not."""


class PolicyConstraintError(AcsmcError):
    """A policy violates the positive-definiteness invariant of its twisted proposals.

    Carries the time index of the offending step when known.
    """

    def __init__(self, message, t=None):
        super().__init__(message)
        self.t = t


class DegenerateWeightsError(AcsmcError):
    """All particle weights vanished at some step.

    Attributes
    ----------
    t : int
        Time step at which every weight was zero.
    stage : int or None
        Annealing stage index, attached by callers that know it.
    """

    def __init__(self, message, t, stage=None):
        super().__init__(message)
        self.t = t
        self.stage = stage


class NonFiniteWeightError(AcsmcError):
    """A single particle weight evaluated to +inf or NaN; carries (t, n)."""

    def __init__(self, message, t, n):
        super().__init__(message)
        self.t = t
        self.n = n


class ReferenceTrajectoryError(AcsmcError):
    """Reference trajectory is incompatible with the conditional SMC run."""
