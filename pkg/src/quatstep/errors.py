"""Exception hierarchy shared by the scattering and packet code."""


class QuatStepError(Exception):
    """Base class for all errors raised by quatstep."""


class RegimeError(QuatStepError, ValueError):
    """Energy outside the diffusion regime (E must exceed V0)."""


class DomainError(RegimeError):
    """E**2 <= V2**2 + V3**2, so the wave numbers rho_+/- are not real."""


class RegionError(QuatStepError, ValueError):
    """Position has the wrong sign for the requested region."""


class SingularSystemError(QuatStepError):
    """The continuity-matching system could not be solved reliably."""


class QuadratureError(QuatStepError, ValueError):
    """Empty or invalid integration window."""


class BoundaryMaxError(QuatStepError):
    """Density maximum sits on the edge of the sampling grid."""
