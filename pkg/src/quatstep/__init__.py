"""Scattering of a non-relativistic particle by a quaternionic potential step."""
from .errors import (
    BoundaryMaxError,
    DomainError,
    QuadratureError,
    QuatStepError,
    RegimeError,
    RegionError,
    SingularSystemError,
)
from .kernels import BACKEND
from .quaternion import Quaternion
from .step import (
    PotentialStep,
    amplitudes,
    complex_limit,
    current_density,
    flux,
    kinematics,
    matching_oracle,
    phase_split,
    pure_limit,
    wavefunction,
)

__version__ = "0.1.0"
