"""Exception types raised across the package."""


class TnDiscordError(Exception):
    """Base class for all package-specific errors."""


class NotHermitian(TnDiscordError):
    """Input matrix deviates from its conjugate transpose beyond tolerance."""

    def __init__(self, deviation: float):
        self.deviation = deviation
        super().__init__(f"matrix is not Hermitian: max|rho - rho^dag| = {deviation:.3e}")


class NotUnitTrace(TnDiscordError):
    """Input matrix trace deviates from one beyond tolerance."""

    def __init__(self, deviation: float):
        self.deviation = deviation
        super().__init__(f"matrix trace differs from 1 by {deviation:.3e}")


class NotPositive(TnDiscordError):
    """Input matrix has an eigenvalue below the positivity tolerance."""

    def __init__(self, min_eigenvalue: float):
        self.min_eigenvalue = min_eigenvalue
        super().__init__(f"matrix is not positive semidefinite: min eigenvalue = {min_eigenvalue:.3e}")


class NotSpecialOrthogonal(TnDiscordError):
    """A rotation argument is not in SO(3) within tolerance."""


class OutOfPositivityRegion(TnDiscordError):
    """Family parameters lie outside the region where the state is physical."""


class NegativeRadicand(TnDiscordError):
    """The inner radicand g1^2 - g2 came out below the bug threshold.

    This is analytically nonnegative, so a large violation signals an
    implementation defect, not a data condition.
    """

    def __init__(self, radicand: float):
        self.radicand = radicand
        super().__init__(f"inner radicand g1^2 - g2 = {radicand:.3e} < -1e-9")


class DegenerateGap(TnDiscordError):
    """Gap-angle machinery was requested for a (near-)degenerate spectrum."""


class InternalConsistencyError(TnDiscordError):
    """An analytic candidate disagrees with its own 1-D circle minimizer."""


class CertificationFailure(TnDiscordError):
    """Closed-form value and brute-force minimum disagree beyond tolerance."""

    def __init__(self, message: str, record=None):
        self.record = record
        super().__init__(message)


class ParseError(TnDiscordError):
    """A state file could not be parsed."""


class UnknownFamily(TnDiscordError):
    """Sweep requested for a family name that does not exist."""
