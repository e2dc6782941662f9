"""Plane-wave scattering by a quaternionic potential step.

Units are hbar = m = 1, so the free wave number is ``eps = sqrt(2 E)``.  The
potential ``i V1 + j V2 + k V3`` acts for ``x > 0``; in symplectic form it is
``Quaternion(i V1, V2 - i V3)``.

The stationary solutions are

    free      Phi_I(x)  = e^{i eps x} + r e^{-i eps x} + j r~ e^{eps x}
    potential Phi_II(x) = (1 + j w) t e^{i rho- x} + (conj(w) + j) t~ e^{-rho+ x}

with complex exponentials multiplying from the right.  Every function in the
closed-form path accepts scalar or array energies; the matching oracle and
the wave function evaluators are scalar only.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .errors import DomainError, RegimeError, RegionError, SingularSystemError
from .quaternion import I, Quaternion

__all__ = [
    "PotentialStep",
    "Kinematics",
    "ScatteringAmplitudes",
    "PhaseSplit",
    "Flux",
    "ComplexLimit",
    "PureLimit",
    "kinematics",
    "kinematics_from_eps",
    "amplitudes",
    "phase_split",
    "flux",
    "wavefunction",
    "current_density",
    "schrodinger_residual",
    "matching_oracle",
    "complex_limit",
    "pure_limit",
    "potential_quaternion",
]

Region = Literal["free", "potential"]


@dataclass(frozen=True)
class PotentialStep:
    V1: float = 0.0
    V2: float = 0.0
    V3: float = 0.0

    @property
    def V0(self) -> float:
        return math.sqrt(self.V1**2 + self.V2**2 + self.V3**2)

    @property
    def Vq(self) -> float:
        """Modulus of the pure quaternionic part, ``|V2 + i V3|``."""
        return math.hypot(self.V2, self.V3)

    @classmethod
    def from_split(cls, V0: float, V1: float, alpha: float = 0.0) -> "PotentialStep":
        """Step with magnitude ``V0`` and complex part ``V1``.

        The quaternionic remainder ``sqrt(V0**2 - V1**2)`` is placed at angle
        ``alpha`` in the (V2, V3) plane; ``alpha = 0`` puts it all in V2.
        """
        if abs(V1) > V0:
            raise ValueError(f"|V1| = {abs(V1)} exceeds V0 = {V0}")
        vq = math.sqrt(max(V0 * V0 - V1 * V1, 0.0))
        if alpha == 0.0:
            return cls(float(V1), vq, 0.0)
        return cls(float(V1), vq * math.cos(alpha), vq * math.sin(alpha))

    def rotated(self, alpha: float) -> "PotentialStep":
        """Same (V1, Vq) with the quaternionic part rotated to angle ``alpha``."""
        vq = self.Vq
        return PotentialStep(self.V1, vq * math.cos(alpha), vq * math.sin(alpha))


def potential_quaternion(V: PotentialStep) -> Quaternion:
    return Quaternion(1j * V.V1, complex(V.V2, -V.V3))


@dataclass(frozen=True)
class Kinematics:
    E: float
    eps: float
    rho_plus: float
    rho_minus: float
    w: complex
    eps_min: float
    root: float  # sqrt(E**2 - V2**2 - V3**2)
    step: PotentialStep


@dataclass(frozen=True)
class ScatteringAmplitudes:
    r: complex
    t: complex
    r_tilde: complex
    t_tilde: complex


@dataclass(frozen=True)
class PhaseSplit:
    mod_r: float
    theta_r: float
    mod_t: float
    theta_t: float


@dataclass(frozen=True)
class Flux:
    R: float
    T: float


@dataclass(frozen=True)
class ComplexLimit:
    r: float
    t: float
    R: float
    T: float


@dataclass(frozen=True)
class PureLimit:
    r: complex
    t: float
    R: float
    T: float


def kinematics(E, V: PotentialStep) -> Kinematics:
    """Wave numbers and mixing parameter at energy ``E`` (scalar or array)."""
    E_arr = np.asarray(E, dtype=float)
    vq2 = V.V2**2 + V.V3**2
    if np.any(~np.isfinite(E_arr)):
        raise DomainError("energy must be finite")
    if np.any(E_arr <= V.V0):
        bad = float(np.min(E_arr))
        if bad * bad <= vq2:
            raise DomainError(
                f"E = {bad!r} gives E**2 <= V2**2 + V3**2 = {vq2!r}; rho_+/- not real"
            )
        raise RegimeError(f"diffusion regime requires E > V0 = {V.V0!r}; got E = {bad!r}")
    root = np.sqrt(E_arr * E_arr - vq2)
    eps = np.sqrt(2.0 * E_arr)
    # root**2 - V1**2 = E**2 - V0**2; the product form keeps the smaller of
    # rho+/- accurate next to threshold where root - |V1| cancels
    gap = (E_arr - V.V0) * (E_arr + V.V0)
    small = np.sqrt(2.0 * gap / (root + abs(V.V1)))
    large = np.sqrt(2.0 * (root + abs(V.V1)))
    if V.V1 == 0.0:
        small = large
    rho_plus, rho_minus = (large, small) if V.V1 >= 0 else (small, large)
    w = -1j * complex(V.V2, -V.V3) / (E_arr + root)
    eps_min = math.sqrt(2.0 * V.V0)
    if E_arr.ndim == 0:
        return Kinematics(float(E_arr), float(eps), float(rho_plus), float(rho_minus),
                          complex(w), eps_min, float(root), V)
    return Kinematics(E_arr, eps, rho_plus, rho_minus, w, eps_min, root, V)


def kinematics_from_eps(eps, V: PotentialStep) -> Kinematics:
    eps = np.asarray(eps, dtype=float)
    return kinematics(0.5 * eps * eps, V)


def amplitudes(k: Kinematics) -> ScatteringAmplitudes:
    """Closed-form r, t, r~, t~ (t first; the others are built on it)."""
    eps, rp, rm, w = k.eps, k.rho_plus, k.rho_minus, k.w
    w2 = np.abs(w) ** 2
    t = (2.0 * eps / (eps + rm)) / (
        1.0 - w2 * (eps - 1j * rm) / (eps + rm) * (eps + 1j * rp) / (eps + rp)
    )
    t_tilde = (1j * rm - eps) / (eps + rp) * w * t
    r_tilde = (1j * rm + rp) / (eps + rp) * w * t
    # (eps - rho-)/(2 eps) [1 - |w|^2 (eps - i rho-)/(eps - rho-) ...] t, multiplied
    # out so neither the 0/0 at eps == rho- nor the small-V cancellation bites
    num_re, num_im, _, _ = _split_parts(k)
    r = (num_re + 1j * num_im) * t / (2.0 * eps * (eps + rp))
    return ScatteringAmplitudes(r, t, r_tilde, t_tilde)


def _wrap(theta):
    return theta - 2.0 * np.pi * np.ceil((theta - np.pi) / (2.0 * np.pi))


def _differences(k: Kinematics):
    """eps - rho-, eps**2 - rho- rho+ and rho+ - rho- without cancellation."""
    V = k.step
    E, root = k.E, k.root
    eps, rp, rm = k.eps, k.rho_plus, k.rho_minus
    vq2 = V.V2**2 + V.V3**2
    # eps**2 - rho-**2 = 2 (E - root + V1), and E - root = Vq**2 / (E + root)
    eps_minus_rm = 2.0 * (vq2 / (E + root) + V.V1) / (eps + rm)
    # rho- rho+ = 2 sqrt(E**2 - V0**2)
    big = np.sqrt((E - V.V0) * (E + V.V0))
    eps2_minus_rr = 2.0 * V.V0**2 / (E + big)
    rp_minus_rm = 4.0 * V.V1 / (rp + rm)
    return eps_minus_rm, eps2_minus_rr, rp_minus_rm


def _split_parts(k: Kinematics):
    eps, rp, rm = k.eps, k.rho_plus, k.rho_minus
    w2 = np.abs(k.w) ** 2
    eps_minus_rm, eps2_minus_rr, rp_minus_rm = _differences(k)
    num_re = eps_minus_rm * (eps + rp) - w2 * eps2_minus_rr
    num_im = eps * (rp + rm) * w2
    den_re = (eps + rm) * (eps + rp) - w2 * (eps * eps + rm * rp)
    den_im = eps * rp_minus_rm * w2
    return num_re, num_im, den_re, den_im


def phase_split(k: Kinematics) -> PhaseSplit:
    """Moduli and quadrant-correct phases of r and t, theta_r in (-pi, pi]."""
    num_re, num_im, den_re, den_im = _split_parts(k)
    den_abs = np.hypot(den_re, den_im)
    mod_t = 2.0 * k.eps * (k.eps + k.rho_plus) / den_abs
    mod_r = np.hypot(num_re, num_im) / den_abs
    theta_t = np.arctan2(den_im, den_re)
    theta_r = _wrap(np.arctan2(num_im, num_re) + theta_t)
    return PhaseSplit(mod_r, theta_r, mod_t, theta_t)


def flux(k: Kinematics, a: ScatteringAmplitudes) -> Flux:
    R = np.abs(a.r) ** 2
    T = k.rho_minus / k.eps * (1.0 - np.abs(k.w) ** 2) * np.abs(a.t) ** 2
    if np.ndim(R) == 0:
        return Flux(float(R), float(T))
    return Flux(R, T)


def _terms(region: Region, k: Kinematics, a: ScatteringAmplitudes):
    """(quaternion prefactor, exponent) pairs; each term is ``P e^{kappa x}``."""
    if region == "free":
        return (
            (Quaternion(1.0, 0.0), 1j * k.eps),
            (Quaternion(a.r, 0.0), -1j * k.eps),
            (Quaternion(0.0, a.r_tilde), complex(k.eps)),
        )
    if region == "potential":
        wbar = complex(k.w).conjugate()
        return (
            (Quaternion(a.t, k.w * a.t), 1j * k.rho_minus),
            (Quaternion(wbar * a.t_tilde, a.t_tilde), complex(-k.rho_plus)),
        )
    raise ValueError(f"unknown region {region!r}")


def _check_region(region: Region, x: float):
    if region == "free" and x > 0:
        raise RegionError(f"free region needs x <= 0, got {x!r}")
    if region == "potential" and x < 0:
        raise RegionError(f"potential region needs x >= 0, got {x!r}")


def wavefunction(region: Region, k: Kinematics, a: ScatteringAmplitudes, x: float,
                 order: int = 0) -> Quaternion:
    """``Phi_I`` or ``Phi_II`` at ``x``, or its ``order``-th derivative."""
    _check_region(region, x)
    out = Quaternion()
    for pref, kappa in _terms(region, k, a):
        out = out + pref * (kappa**order * np.exp(kappa * x))
    return out


def current_density(region: Region, k: Kinematics, a: ScatteringAmplitudes, x: float) -> float:
    """Probability current ``-(conj(Phi) i Phi' + h.c.)``.

    The overall sign makes a right-moving plane wave carry ``+2 eps``.
    """
    phi = wavefunction(region, k, a, x)
    dphi = wavefunction(region, k, a, x, order=1)
    return -2.0 * (phi.conjugate() * I * dphi).real


def schrodinger_residual(region: Region, k: Kinematics, a: ScatteringAmplitudes,
                         x: float) -> Quaternion:
    """``(i/2) Phi'' - V Phi + Phi i E``; vanishes for an exact solution."""
    phi = wavefunction(region, k, a, x)
    d2phi = wavefunction(region, k, a, x, order=2)
    V = potential_quaternion(k.step) if region == "potential" else Quaternion()
    return 0.5 * I * d2phi - V * phi + phi * (1j * k.E)


def matching_oracle(k: Kinematics, cond_limit: float = 1e12) -> ScatteringAmplitudes:
    """Solve continuity of Phi and Phi' at x = 0 as a real 8x8 system.

    The residual is assembled from the generic wave-function terms with trial
    amplitudes, so it shares nothing with the closed forms in `amplitudes`.
    """
    if np.ndim(k.eps) != 0:
        raise ValueError("matching_oracle takes scalar kinematics")

    def residual(u):
        trial = ScatteringAmplitudes(complex(u[0], u[1]), complex(u[4], u[5]),
                                     complex(u[2], u[3]), complex(u[6], u[7]))
        out = []
        for order in (0, 1):
            diff = (wavefunction("free", k, trial, 0.0, order)
                    - wavefunction("potential", k, trial, 0.0, order))
            out.extend(diff.components())
        return np.array(out)

    base = residual(np.zeros(8))
    A = np.empty((8, 8))
    for col in range(8):
        e = np.zeros(8)
        e[col] = 1.0
        A[:, col] = residual(e) - base
    if not np.isfinite(A).all() or np.linalg.cond(A) > cond_limit:
        raise SingularSystemError("continuity matching matrix is numerically singular")
    u = np.linalg.solve(A, -base)
    return ScatteringAmplitudes(complex(u[0], u[1]), complex(u[4], u[5]),
                                complex(u[2], u[3]), complex(u[6], u[7]))


def complex_limit(E: float, V1: float) -> ComplexLimit:
    """Standard complex step: real r, t with ``sigma = sqrt(2 (E - V1))``."""
    if E <= abs(V1):
        raise RegimeError(f"complex limit needs E > |V1|; got E={E!r}, V1={V1!r}")
    eps = math.sqrt(2.0 * E)
    sigma = math.sqrt(2.0 * (E - V1))
    r = (eps - sigma) / (eps + sigma)
    t = 2.0 * eps / (eps + sigma)
    return ComplexLimit(r, t, r * r, sigma / eps * t * t)


def pure_limit(E: float, Vq: float) -> PureLimit:
    """V1 = 0: ``rho = sqrt(2 sqrt(E**2 - Vq**2))``, t = eps / rho."""
    if E <= abs(Vq):
        raise RegimeError(f"pure limit needs E > Vq; got E={E!r}, Vq={Vq!r}")
    eps = math.sqrt(2.0 * E)
    rho = math.sqrt(2.0 * math.sqrt(E * E - Vq * Vq))
    s = eps * eps + rho * rho
    r = (eps - rho) / math.sqrt(s) * complex(math.cos(math.atan(eps / rho)),
                                             math.sin(math.atan(eps / rho)))
    t = eps / rho
    return PureLimit(r, t, abs(r) ** 2, 2.0 * rho**3 / (eps * s) * t * t)
