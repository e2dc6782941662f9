"""Wave packets built from the stationary solutions, and their maxima.

A packet is a real superposition over the free wave number ``eps`` with a
Gaussian weight ``g`` peaked at ``eps0``, each plane wave carrying its time
factor ``exp(-i eps**2 t / 2)``.  The module does two independent things with
it: integrates the superposition numerically and locates the density
maximum, and predicts the maximum from the stationary-phase condition.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import kernels
from .errors import BoundaryMaxError, RegimeError, RegionError
from .quadrature import QuadratureSpec
from .quaternion import Quaternion
from .step import (
    PotentialStep,
    amplitudes,
    kinematics,
    kinematics_from_eps,
    phase_split,
)

__all__ = [
    "ConvolutionSpec",
    "PacketField",
    "PacketPhases",
    "PhaseDerivatives",
    "PacketObservables",
    "TaylorReport",
    "SweepRow",
    "TrackRow",
    "omega_free",
    "omega_potential",
    "packet_field",
    "track_maximum",
    "phase_derivatives",
    "drho_minus_deps",
    "transmitted_velocity",
    "predictions",
    "taylor_checks",
    "third_order_fit",
    "velocity_sweep",
    "energy_grid",
    "default_times",
    "track_trajectory",
]

# clipped windows start just above eps_min, where E == V0 is excluded
_EPS_MIN_NUDGE = 1e-12


@dataclass(frozen=True)
class ConvolutionSpec:
    eps0: float
    sigma_eps: float
    shape: str = "gaussian"
    truncation_sigmas: float = 6.0

    def __post_init__(self):
        if self.shape != "gaussian":
            raise ValueError(f"unsupported convolution shape {self.shape!r}")
        if not (self.eps0 > 0 and self.sigma_eps > 0 and self.truncation_sigmas > 0):
            raise ValueError("eps0, sigma_eps and truncation_sigmas must be positive")

    @classmethod
    def from_energy(cls, E0: float, sigma_ratio: float, truncation_sigmas: float = 6.0):
        eps0 = math.sqrt(2.0 * E0)
        return cls(eps0, sigma_ratio * eps0, "gaussian", truncation_sigmas)

    @property
    def E0(self) -> float:
        return 0.5 * self.eps0**2

    def weight(self, eps):
        return np.exp(-0.5 * ((np.asarray(eps) - self.eps0) / self.sigma_eps) ** 2)

    def window(self, eps_min: float) -> tuple[float, float]:
        half = self.truncation_sigmas * self.sigma_eps
        lo = self.eps0 - half
        if lo <= eps_min:
            lo = eps_min * (1.0 + _EPS_MIN_NUDGE) if eps_min > 0 else 0.0
        return lo, self.eps0 + half


@dataclass(frozen=True)
class PacketField:
    region: str
    t: float
    x: np.ndarray
    z1: np.ndarray
    z2: np.ndarray

    @property
    def density(self) -> np.ndarray:
        return self.z1.real**2 + self.z1.imag**2 + self.z2.real**2 + self.z2.imag**2

    def value(self, i: int) -> Quaternion:
        return Quaternion(self.z1[i], self.z2[i])


def _spectrum(conv: ConvolutionSpec, quad: QuadratureSpec, V: PotentialStep, t: float):
    eps_min = math.sqrt(2.0 * V.V0)
    lo, hi = conv.window(eps_min)
    eps, wts = quad.nodes_weights(lo, hi)
    k = kinematics_from_eps(eps, V)
    a = amplitudes(k)
    c = wts * conv.weight(eps) * np.exp(-0.5j * eps * eps * t)
    return k, a, c


def _omega(region, conv, quad, V, x, t, backend=None):
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if region == "free" and np.any(x > 0):
        raise RegionError("free-region packet needs x <= 0")
    if region == "potential" and np.any(x < 0):
        raise RegionError("potential-region packet needs x >= 0")
    expsum = kernels.expsum if backend is None else kernels.get_expsum(backend)
    k, a, c = _spectrum(conv, quad, V, t)
    eps = k.eps
    if region == "free":
        z1 = expsum(x, np.concatenate([eps, -eps]).astype(complex),
                    np.concatenate([c, c * a.r]))
        z2 = expsum(x, -1j * eps, c * a.r_tilde)
    elif region == "potential":
        waves = np.concatenate([k.rho_minus + 0j, 1j * k.rho_plus])
        z1 = expsum(x, waves, np.concatenate([c * a.t, c * np.conj(k.w) * a.t_tilde]))
        z2 = expsum(x, waves, np.concatenate([c * k.w * a.t, c * a.t_tilde]))
    else:
        raise ValueError(f"unknown region {region!r}")
    return x, z1, z2


def omega_free(conv: ConvolutionSpec, quad: QuadratureSpec, V: PotentialStep,
               x: float, t: float) -> Quaternion:
    """Free-region packet (incident + reflected + evanescent) at one point."""
    _, z1, z2 = _omega("free", conv, quad, V, x, t)
    return Quaternion(z1[0], z2[0])


def omega_potential(conv: ConvolutionSpec, quad: QuadratureSpec, V: PotentialStep,
                    x: float, t: float) -> Quaternion:
    """Transmitted packet, both the (1, i) and (j, k) parts, at one point."""
    _, z1, z2 = _omega("potential", conv, quad, V, x, t)
    return Quaternion(z1[0], z2[0])


def packet_field(region: str, conv: ConvolutionSpec, quad: QuadratureSpec,
                 V: PotentialStep, x_grid, t: float, backend: str | None = None) -> PacketField:
    x, z1, z2 = _omega(region, conv, quad, V, x_grid, t, backend)
    return PacketField(region, float(t), x, z1, z2)


def track_maximum(field: PacketField) -> float:
    """Grid argmax of the density, refined by a parabola through 3 samples."""
    d = field.density
    x = field.x
    i = int(np.argmax(d))
    if i == 0 or i == len(d) - 1:
        raise BoundaryMaxError(
            f"density maximum at grid edge x = {float(x[i])!r}; widen the grid"
        )
    h = x[i + 1] - x[i]
    curv = d[i - 1] - 2.0 * d[i] + d[i + 1]
    if curv >= 0:
        return float(x[i])
    return float(x[i] + 0.5 * h * (d[i - 1] - d[i + 1]) / curv)


@dataclass(frozen=True)
class PacketPhases:
    """Phase functions whose eps-derivatives locate the packet maxima."""

    step: PotentialStep

    @property
    def jk_offset(self) -> float:
        V2, V3 = self.step.V2, self.step.V3
        if V3 == 0.0:
            return math.copysign(math.pi / 2, V2) if V2 != 0.0 else 0.0
        return math.atan(V2 / V3)

    def _split(self, eps):
        return phase_split(kinematics_from_eps(eps, self.step))

    def theta_inc(self, eps, x, t):
        return eps * x - 0.5 * eps**2 * t

    def theta_ref(self, eps, x, t):
        return -eps * x - 0.5 * eps**2 * t + self._split(eps).theta_r

    def theta_tra_1i(self, eps, x, t):
        k = kinematics_from_eps(eps, self.step)
        return k.rho_minus * x - 0.5 * eps**2 * t + phase_split(k).theta_t

    def theta_tra_jk(self, eps, x, t):
        return self.theta_tra_1i(eps, x, t) + self.jk_offset


@dataclass(frozen=True)
class PhaseDerivatives:
    dtheta_r: float
    dtheta_t: float
    drho_minus: float
    drho_minus_fd: float


def drho_minus_deps(V: PotentialStep, eps):
    """Closed-form d(rho-)/d(eps) = eps E / (sqrt(E**2 - Vq**2) rho-)."""
    k = kinematics_from_eps(eps, V)
    return k.eps * k.E / (k.root * k.rho_minus)


def transmitted_velocity(V: PotentialStep, E0):
    """Group velocity ``v0 / [d rho- / d eps]`` in the potential region."""
    eps0 = np.sqrt(2.0 * np.asarray(E0, dtype=float))
    return eps0 / drho_minus_deps(V, eps0)


def _wrap(d):
    return (d + np.pi) % (2.0 * np.pi) - np.pi


def phase_derivatives(V: PotentialStep, eps0: float, rel_step: float = 1e-4) -> PhaseDerivatives:
    """Derivatives at ``eps0`` by Richardson-extrapolated central differences.

    Steps ``h`` and ``h/2`` with ``h = rel_step * eps0``.
    """
    h = rel_step * eps0
    pts = eps0 + np.array([-h, h, -0.5 * h, 0.5 * h])
    try:
        k = kinematics_from_eps(pts, V)
    except RegimeError as exc:
        raise RegimeError(f"difference stencil around eps0 = {eps0!r} leaves the "
                          f"diffusion regime: {exc}") from exc
    ps = phase_split(k)

    def richardson(f, wrap=True):
        d1 = f[1] - f[0]
        d2 = f[3] - f[2]
        if wrap:
            d1, d2 = _wrap(d1), _wrap(d2)
        d1 /= 2.0 * h
        d2 /= h
        return float((4.0 * d2 - d1) / 3.0)

    return PhaseDerivatives(
        dtheta_r=richardson(ps.theta_r),
        dtheta_t=richardson(ps.theta_t),
        drho_minus=float(drho_minus_deps(V, eps0)),
        drho_minus_fd=richardson(k.rho_minus, wrap=False),
    )


@dataclass(frozen=True)
class PacketObservables:
    """Stationary-phase predictions at the spectral peak ``E0``.

    Dimensionless times are phase derivatives with respect to ``E/V0``.  ``x_*0_dimless`` are the corresponding shifts
    ``sqrt(2 V0) x_max(0)`` from the eps-derivative; the two differ by the
    factor ``2 sqrt(E0/V0)``.
    """

    E0: float
    V0: float
    v0: float
    v_tra: float
    dtheta_r: float
    dtheta_t: float
    drho_minus: float
    t_ref_delay: float
    t_tra_delay: float
    t_ref_dimless: float
    t_tra_dimless: float
    x_ref0_dimless: float
    x_tra0_dimless: float
    derivs: PhaseDerivatives = field(repr=False)

    def x_inc_max(self, t):
        return self.v0 * np.asarray(t)

    def x_ref_max(self, t):
        return -self.v0 * np.asarray(t) + self.dtheta_r

    def x_tra_max(self, t):
        return (self.v0 * np.asarray(t) - self.dtheta_t) / self.drho_minus


def predictions(V: PotentialStep, E0: float) -> PacketObservables:
    kinematics(E0, V)  # regime check at the peak itself
    eps0 = math.sqrt(2.0 * E0)
    d = phase_derivatives(V, eps0)
    v0 = eps0
    V0 = V.V0
    return PacketObservables(
        E0=E0,
        V0=V0,
        v0=v0,
        v_tra=v0 / d.drho_minus,
        dtheta_r=d.dtheta_r,
        dtheta_t=d.dtheta_t,
        drho_minus=d.drho_minus,
        t_ref_delay=d.dtheta_r / v0,
        t_tra_delay=d.dtheta_t / v0,
        t_ref_dimless=V0 / eps0 * d.dtheta_r,
        t_tra_dimless=-V0 / eps0 * d.dtheta_t / d.drho_minus + 0.0,
        x_ref0_dimless=math.sqrt(2.0 * V0) * d.dtheta_r,
        x_tra0_dimless=-math.sqrt(2.0 * V0) * d.dtheta_t / d.drho_minus + 0.0,
        derivs=d,
    )


@dataclass(frozen=True)
class TaylorReport:
    u: float
    vtra_i_exact: float
    vtra_i_series: float
    vtra_i_scaled_residual: float  # |exact - series| / u**3
    vtra_jk_exact: float
    vtra_jk_series: float
    vtra_jk_scaled_residual: float  # |exact - series| / u**4
    t_ref_pure: float
    t_ref_series: float
    t_ref_scaled_residual: float  # |exact - series| / u**4


def taylor_checks(E0: float, V0: float) -> TaylorReport:
    """Compare exact velocities and pure-case reflection time with their series.

    Velocities are reported as ratios to ``v0``.  Meant for ``V0/E0 <= 0.1``.
    """
    u = V0 / E0
    vi = float(transmitted_velocity(PotentialStep(V0, 0.0, 0.0), E0)) / math.sqrt(2 * E0)
    vjk = float(transmitted_velocity(PotentialStep(0.0, V0, 0.0), E0)) / math.sqrt(2 * E0)
    vi_s = 1.0 - 0.5 * u - 0.125 * u * u
    vjk_s = 1.0 - 0.75 * u * u
    tr = predictions(PotentialStep(0.0, V0, 0.0), E0).t_ref_dimless
    tr_s = -0.25 * u**3
    return TaylorReport(u, vi, vi_s, abs(vi - vi_s) / u**3, vjk, vjk_s,
                        abs(vjk - vjk_s) / u**4, tr, tr_s, abs(tr - tr_s) / u**4)


def third_order_fit(u_values: Sequence[float], V0: float = 1.0) -> tuple[float, float]:
    """Log-log fit ``|t_ref| = A u**p`` for the pure case; returns ``(p, A)``."""
    u = np.asarray(u_values, dtype=float)
    tr = np.array([abs(predictions(PotentialStep(0.0, V0, 0.0), V0 / ui).t_ref_dimless)
                   for ui in u])
    slope, intercept = np.polyfit(np.log(u), np.log(tr), 1)
    return float(slope), float(math.exp(intercept))


@dataclass(frozen=True)
class SweepRow:
    e0_over_v0: float
    v1_over_v0: float
    vel_ratio: float
    t_tra_dimless: float
    t_ref_dimless: float
    in_regime: bool


def energy_grid(start: float = 1.0, stop: float = 10.0, step: float = 0.01) -> np.ndarray:
    n = int(round((stop - start) / step))
    return np.round(start + step * np.arange(n + 1), 12)


def velocity_sweep(V0: float, v1_over_v0: Sequence[float], e0_over_v0: Sequence[float],
               guard: float = 0.05) -> list[SweepRow]:
    """Relative transmitted velocity and delay times against ``E0/V0``.

    For each ``V1 = f V0`` the step is ``(V1, sqrt(V0**2 - V1**2), 0)``.  The
    reference is the complex step of the same magnitude and the sign of
    ``V1`` (``+V0`` for ``V1 = 0``).  Points with ``E0/V0 < 1 + guard`` or
    outside the diffusion regime come back as NaN rows with
    ``in_regime=False``.
    """
    rows = []
    nan = float("nan")
    for f in v1_over_v0:
        f = float(f)
        V = PotentialStep.from_split(V0, f * V0)
        ref = PotentialStep(math.copysign(V0, f) if f != 0.0 else V0, 0.0, 0.0)
        for e in e0_over_v0:
            e = float(e)
            if e < 1.0 + guard:
                rows.append(SweepRow(e, f, nan, nan, nan, False))
                continue
            E0 = e * V0
            try:
                obs = predictions(V, E0)
                v_ref = float(transmitted_velocity(ref, E0))
            except RegimeError:
                rows.append(SweepRow(e, f, nan, nan, nan, False))
                continue
            rows.append(SweepRow(e, f, obs.v_tra / v_ref - 1.0, obs.t_tra_dimless,
                                 obs.t_ref_dimless, True))
    return rows


@dataclass(frozen=True)
class TrackRow:
    t: float
    packet: str  # "inc", "ref" or "tra"
    x_tracked: float
    x_predicted: float

    @property
    def residual(self) -> float:
        return self.x_tracked - self.x_predicted


def default_times(E0: float, sigma_ratio: float, count: int = 5,
                  spacing_widths: float = 12.0) -> list[float]:
    """``±k T`` for k = 1..count with ``v0 T`` equal to ``spacing_widths`` widths."""
    eps0 = math.sqrt(2.0 * E0)
    T = spacing_widths / (sigma_ratio * eps0) / eps0
    return [-(count - i) * T for i in range(count)] + [(i + 1) * T for i in range(count)]


def _packet_width(sigma_eps: float, t: float) -> float:
    return math.sqrt(1.0 + (sigma_eps**2 * t) ** 2) / sigma_eps


def track_trajectory(V: PotentialStep, E0: float, sigma_ratio: float, times: Sequence[float],
                     quad: QuadratureSpec | None = None, grid_points: int = 801,
                     half_widths: float = 8.0, truncation_sigmas: float = 6.0,
                     backend: str | None = None) -> list[TrackRow]:
    """Integrate the packets and track their maxima at each time.

    Negative times track the incident packet; positive times the reflected
    packet (when the step reflects at all) and the transmitted one.  Each
    grid spans ``±half_widths`` packet widths around the prediction, clipped
    to the packet's region.
    """
    quad = quad or QuadratureSpec()
    conv = ConvolutionSpec.from_energy(E0, sigma_ratio, truncation_sigmas)
    obs = predictions(V, E0)
    reflects = V.V0 > 0.0
    rows = []
    for t in times:
        t = float(t)
        if t == 0.0:
            raise ValueError("t = 0 puts the packet on the step; use |t| > 0")
        width = _packet_width(conv.sigma_eps, t)
        jobs = []
        if t < 0:
            jobs.append(("inc", "free", float(obs.x_inc_max(t)), width))
        else:
            if reflects:
                jobs.append(("ref", "free", float(obs.x_ref_max(t)), width))
            jobs.append(("tra", "potential", float(obs.x_tra_max(t)),
                         width * max(1.0, 1.0 / obs.drho_minus)))
        for name, region, center, wdt in jobs:
            lo, hi = center - half_widths * wdt, center + half_widths * wdt
            if region == "free":
                hi = min(hi, 0.0)
            else:
                lo = max(lo, 0.0)
            if not hi > lo:
                raise BoundaryMaxError(f"{name} packet at t={t!r} lies outside its region")
            grid = np.linspace(lo, hi, grid_points)
            fld = packet_field(region, conv, quad, V, grid, t, backend)
            rows.append(TrackRow(t, name, track_maximum(fld), center))
    return rows
