"""Exception hierarchy shared by the solver modules."""


class SepMotionError(Exception):
    """Base class for every error raised by this package."""


class ConstitutiveError(SepMotionError):
    """The material model violates an admissibility condition."""


class DomainError(SepMotionError, ValueError):
    """An argument lies outside the region where a formula is valid."""


class CoercivityError(ConstitutiveError):
    """U1(u) <= 0 somewhere, so V1/V2 are undefined."""


class TubeViolation(SepMotionError):
    """A profile left the admissible tube |u - 1| <= delta."""


class InsufficientShear(SepMotionError):
    """The shear parameter beta is too small for a boundary root u0."""


class BracketFailure(SepMotionError):
    """z(+R) and z(-R) do not straddle the boundary target."""

    def __init__(self, message, z_minus=None, z_plus=None, target=None):
        super().__init__(message)
        self.z_minus = z_minus
        self.z_plus = z_plus
        self.target = target


class DivergenceError(SepMotionError):
    """Picard differences grew for several consecutive sweeps."""


class MaxIterationsError(SepMotionError):
    """Picard iteration did not reach tolerance within the sweep budget."""


class RegimeError(SepMotionError):
    """Eigenvalue sign, trajectory regime and exponent h are inconsistent."""


class StepUnderflow(SepMotionError):
    """The adaptive integrator's step collapsed away from a collapse event."""
