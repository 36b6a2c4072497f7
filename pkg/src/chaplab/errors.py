"""Exception types shared across the package."""


class DomainError(ValueError):
    """Input outside the physical or mathematical domain of an operation."""


class BranchError(ValueError):
    """Density on the wrong side of a wave-curve anchor for the requested branch."""


class DegenerateJumpError(ValueError):
    """Jump relation evaluated across equal densities."""


class QuadratureError(RuntimeError):
    """Adaptive quadrature failed to reach the requested tolerance."""


class BracketError(RuntimeError):
    """Root bracketing failed; carries a diagnostic message."""


class WaveKindError(TypeError):
    """Operation applied to a wave of the wrong kind."""


class DeltaConditionError(ValueError):
    """Delta-shock formation conditions not met by the given states."""


class PositivityError(RuntimeError):
    """Density lost positivity during a finite-volume update."""


class CflCollapseError(RuntimeError):
    """Stable time step collapsed to zero; integration cannot proceed."""


class DomainSizeError(RuntimeError):
    """Waves reached the finite-volume domain boundary before the final time."""


class SweepError(RuntimeError):
    """One or more sweep points failed; partial records are attached."""

    def __init__(self, message: str, records=None, failures=None):
        super().__init__(message)
        self.records = records if records is not None else []
        self.failures = failures if failures is not None else []
