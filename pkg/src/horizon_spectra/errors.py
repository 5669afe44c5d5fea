"""Exception types and machine-readable reason codes shared across the package."""

CHARGE_TOO_LARGE = "CHARGE_TOO_LARGE"
MASS_OUT_OF_WINDOW = "MASS_OUT_OF_WINDOW"
ROOTS_NOT_DISTINCT = "ROOTS_NOT_DISTINCT"
ORDERING_VIOLATION = "ORDERING_VIOLATION"

REASON_CODES = (
    CHARGE_TOO_LARGE,
    MASS_OUT_OF_WINDOW,
    ROOTS_NOT_DISTINCT,
    ORDERING_VIOLATION,
)


class HorizonError(Exception):
    """Base class for all domain errors raised by this package."""


class NotAdmissible(HorizonError):
    """Parameters do not produce four distinct real horizon radii in the
    required ordering.

    Carries a ``reason`` string from ``REASON_CODES`` so callers (the scanner,
    the service layer) can report inadmissibility without parsing messages.
    """

    def __init__(self, message, reason=ORDERING_VIOLATION):
        super().__init__(message)
        self.reason = reason


class ChargeTooLarge(NotAdmissible):
    """Charge exceeds the bound under which the mass window is defined."""

    def __init__(self, message):
        super().__init__(message, reason=CHARGE_TOO_LARGE)


class NotAHorizon(HorizonError):
    """A radius failed the polynomial residual gate and is not a horizon."""


class NotAPositiveRoot(HorizonError):
    """A purported rotating zero-charge horizon radius fails its positivity
    certificate."""


class BadMetric(HorizonError):
    """A metric coefficient sampled non-positive on the interior grid."""


class NoConvergence(HorizonError):
    """An iterative eigenvalue or eigenvector computation hit its cap."""


class ContinuationLost(HorizonError):
    """Root tracking across a parameter sweep jumped branches."""
