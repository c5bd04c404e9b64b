"""Exception types raised by the closure, grid and scheme layers."""


class SgmixError(Exception):
    """Base class for all sgmix errors."""


class ZeroDensity(SgmixError):
    """Total partial density rho1 + rho2 is not positive."""


class NegativeDiscriminant(SgmixError):
    """Discriminant of the quadratic pressure equation is not positive.

    For states with both partial densities positive this signals an
    invalid (non-closable) conserved state, typically internal energy
    below the stiffening floor.
    """


class NonpositivePressure(SgmixError):
    """Physical pressure root came out non-positive."""


class NonpositiveTemperature(SgmixError):
    """Closure produced a non-positive temperature."""


class PoleAtP(SgmixError):
    """Rational pressure equation evaluated at a pole p = -p_star_k."""


class InvalidPrimitive(SgmixError):
    """Primitive variables violate admissibility (p + p_star_k > 0, theta > 0, alpha1 in [0, 1])."""


class LengthMismatch(SgmixError):
    """Field length does not match its mesh, or fields on different meshes were mixed."""


class ZeroAveragedDensity(SgmixError):
    """A per-component regularizing velocity is undefined because the averaged partial density vanishes."""


class UnknownCase(SgmixError):
    """Benchmark case id is not one of A..G."""


class NonNestedMesh(SgmixError):
    """Coarse mesh nodes do not coincide with reference mesh nodes."""


class InvalidConfig(SgmixError):
    """Bad key or value in a case/scheme configuration."""


class SolverError(SgmixError):
    """Base for time-stepping failures; carries the node index and time."""

    def __init__(self, message, node=None, time=None):
        super().__init__(message)
        self.node = node
        self.time = time


class StateBlowup(SolverError):
    """A non-finite value appeared in the evolved state."""


class AdmissibilityLost(SolverError):
    """An evolved state can no longer be closed (rho <= 0, d <= 0, p <= 0, p + p_star_k <= 0 or theta <= 0)."""
