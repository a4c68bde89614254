"""Exception and warning types shared across the package."""


class CatforgeError(Exception):
    """Base class for all catforge errors."""


class InvalidDimensionError(CatforgeError, ValueError):
    """Fock truncation too small to represent the requested object."""


class SpaceMismatchError(CatforgeError, ValueError):
    """Objects built over incompatible product spaces."""


class DegenerateNormalizationError(CatforgeError, ValueError):
    """State family degenerates to the zero vector (e.g. odd cat at alpha=0)."""


class ConstraintViolationError(CatforgeError, ValueError):
    """Coupler drive does not satisfy eps_c = +/- K_c * alpha_j * alpha_k."""

    def __init__(self, msg: str, coupler: int | None = None):
        super().__init__(msg)
        self.coupler = coupler


class IntegrationFailureError(CatforgeError, RuntimeError):
    """The propagator could not advance past a point in time."""

    def __init__(self, msg: str, time: float | None = None):
        super().__init__(msg)
        self.time = time


class UndefinedPhaseError(CatforgeError, ValueError):
    """Relative phase requested between states with vanishing overlap."""


class PhaseRangeError(CatforgeError, ValueError):
    """Requested Berry phase outside the attainable range."""

    def __init__(self, msg: str, max_attainable: float | None = None):
        super().__init__(msg)
        self.max_attainable = max_attainable


class TruncationWarning(UserWarning):
    """Fock cutoff is smaller than the recommended rule for this amplitude."""


class TruncationLeakWarning(UserWarning):
    """Population reached the top Fock levels during propagation."""


class NormDriftWarning(UserWarning):
    """State norm drifted beyond the integrator tolerance budget."""
