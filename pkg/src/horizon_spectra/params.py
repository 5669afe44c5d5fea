"""Spacetime parameter tuple and its derived quantities."""

from dataclasses import dataclass


@dataclass(frozen=True)
class Parameters:
    """Parameters of a rotating charged de Sitter black hole spacetime.

    Attributes
    ----------
    lam : float
        Cosmological constant, > 0.
    m : float
        Mass parameter, > 0.
    q : float
        Charge parameter, >= 0.
    a : float
        Rotation parameter, >= 0.
    """

    lam: float
    m: float
    q: float
    a: float = 0.0

    def __post_init__(self):
        if not (self.lam > 0):
            raise ValueError("cosmological constant must be positive, got %r" % (self.lam,))
        if not (self.m > 0):
            raise ValueError("mass parameter must be positive, got %r" % (self.m,))
        if self.q < 0:
            raise ValueError("charge parameter must be nonnegative, got %r" % (self.q,))
        if self.a < 0:
            raise ValueError("rotation parameter must be nonnegative, got %r" % (self.a,))

    @property
    def xi(self):
        """Rotation factor 1 + lam a^2 / 3; equals 1 when a = 0."""
        return 1.0 + self.lam * self.a * self.a / 3.0

    @property
    def angular_momentum(self):
        """Physical angular momentum a m / xi^2."""
        x = self.xi
        return self.a * self.m / (x * x)

    @property
    def physical_mass(self):
        """Physical mass m / xi^2."""
        x = self.xi
        return self.m / (x * x)

    @property
    def physical_charge(self):
        """Physical charge q / xi; equals q when a = 0."""
        return self.q / self.xi
