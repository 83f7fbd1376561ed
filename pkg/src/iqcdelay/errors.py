"""Exception types raised across the package."""


class IqcDelayError(Exception):
    """Base class for all package-specific errors."""


class DimensionError(IqcDelayError):
    """Matrix dimensions are not conformal for the requested operation."""


class SingularResolvent(IqcDelayError):
    """jw*I - A is numerically singular at the requested frequency."""


class IllPosedLoop(IqcDelayError):
    """Static feedback loop matrix I - D_loop is singular."""


class ImaginaryAxisPole(IqcDelayError):
    """An eigenvalue lies within the stability margin of the imaginary axis."""


class NoStabilizingSolution(IqcDelayError):
    """The Riccati equation has no stabilizing solution (Hamiltonian has
    imaginary-axis eigenvalues); no J-spectral factorization exists."""


class SingularDpi(IqcDelayError):
    """The high-frequency multiplier value D_pi is singular."""


class RateBoundTooLarge(IqcDelayError):
    """Delay rate bound r must satisfy r < 1 for this multiplier."""


class NegativeCoefficient(IqcDelayError):
    """Conic combination coefficients must be nonnegative."""


class NotPSD(IqcDelayError):
    """A matrix required to be positive semidefinite is not."""


class DegenerateMultiplier(IqcDelayError):
    """Multiplier defines no circle or half-plane (pi22 ~ 0 and pi21 ~ 0)."""


class Infeasible(IqcDelayError):
    """The semidefinite program is infeasible."""


class InfeasibleAtLo(IqcDelayError):
    """Delay-margin bisection: analysis already infeasible at the lower bound."""


class SolverFailure(IqcDelayError):
    """The SDP backend failed without a conclusive feasibility status."""


class NoCrossover(IqcDelayError):
    """Open loop has no gain crossover; frequency-response margin is infinite."""


class StepTooLarge(IqcDelayError):
    """Simulation step size too large relative to the minimum delay."""


class ConfigError(IqcDelayError):
    """Run configuration failed schema validation."""

    def __init__(self, message, field=None):
        self.field = field
        if field is not None:
            message = f"{field}: {message}"
        super().__init__(message)
