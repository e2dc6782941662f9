"""Randomized invariant suites behind ``quatstep verify``."""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

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
)

CURRENT_POINTS_FREE = (-3.0, -1.0, -0.1, 0.0)
CURRENT_POINTS_POTENTIAL = (0.0, 0.1, 1.0, 3.0)


@dataclass
class SuiteResult:
    name: str
    samples: int
    max_error: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return bool(self.max_error < self.tolerance)

    def as_dict(self):
        d = asdict(self)
        d["passed"] = self.passed
        return d


def random_points(rng: np.random.Generator, n: int, ratio_range=(1.01, 100.0),
                  v0_range=(0.1, 10.0)):
    """``n`` random (E, PotentialStep) pairs in the diffusion regime.

    The potential direction is uniform on the sphere, so V1 takes both signs.
    """
    pts = []
    lo, hi = np.log(ratio_range[0]), np.log(ratio_range[1])
    for _ in range(n):
        direction = rng.normal(size=3)
        direction /= np.linalg.norm(direction)
        V0 = rng.uniform(*v0_range)
        V = PotentialStep(*(float(c) for c in V0 * direction))
        E = V.V0 * math.exp(rng.uniform(lo, hi))
        pts.append((E, V))
    return pts


def unitarity_suite(rng, n=10_000, tol=1e-12):
    err = 0.0
    for E, V in random_points(rng, n):
        k = kinematics(E, V)
        f = flux(k, amplitudes(k))
        err = max(err, abs(f.R + f.T - 1.0))
    return SuiteResult("unitarity", n, float(err), tol)


def oracle_suite(rng, n=1_000, tol=1e-10):
    err = 0.0
    for E, V in random_points(rng, n):
        k = kinematics(E, V)
        a, o = amplitudes(k), matching_oracle(k)
        for name in ("r", "t", "r_tilde", "t_tilde"):
            err = max(err, abs(getattr(a, name) - getattr(o, name)))
    return SuiteResult("oracle_equivalence", n, float(err), tol)


def current_samples(E, V):
    k = kinematics(E, V)
    a = amplitudes(k)
    J = [current_density("free", k, a, x) for x in CURRENT_POINTS_FREE]
    J += [current_density("potential", k, a, x) for x in CURRENT_POINTS_POTENTIAL]
    return np.array(J)


def current_suite(rng, n=100, tol=1e-10):
    err = 0.0
    for E, V in random_points(rng, n):
        J = current_samples(E, V)
        err = max(err, float((J.max() - J.min()) / abs(J.mean())))
    return SuiteResult("current_constancy", n, err, tol)


def limits_suite(rng, n=200, offset=1e-6, tol=1e-10):
    """General amplitudes next to each limit against the limit closed forms.

    A quaternionic offset moves r, t only at second order, so ``offset`` is
    used as is.  V1 enters at first order, so it is offset by ``offset**2``.
    """
    err = 0.0
    for E, V in random_points(rng, n):
        V0 = V.V0
        kc = kinematics(E, PotentialStep(V0, offset * V0, 0.0))
        ac, cl = amplitudes(kc), complex_limit(E, V0)
        err = max(err, abs(ac.r - cl.r), abs(ac.t - cl.t))
        kp = kinematics(E, PotentialStep(offset**2 * V0, V0, 0.0))
        ap, pl = amplitudes(kp), pure_limit(E, V0)
        err = max(err, abs(ap.r - pl.r), abs(ap.t - pl.t))
        ps = phase_split(kinematics(E, PotentialStep(0.0, 0.6 * V0, 0.8 * V0)))
        eps, rho = math.sqrt(2 * E), math.sqrt(2 * math.sqrt(E * E - V0 * V0))
        err = max(err, abs(ps.theta_t), abs(ps.theta_r - math.atan(eps / rho)))
    return SuiteResult("limit_consistency", n, float(err), tol)


def rotation_suite(rng, n=100, angles=32, tol=1e-12):
    err = 0.0
    for E, V in random_points(rng, n):
        ref = None
        for alpha in np.linspace(0.0, 2 * np.pi, angles, endpoint=False):
            k = kinematics(E, V.rotated(alpha))
            a, ps, f = amplitudes(k), phase_split(k), flux(k, amplitudes(k))
            vals = np.array([a.r.real, a.r.imag, a.t.real, a.t.imag, f.R, f.T,
                             ps.theta_r, ps.theta_t])
            if ref is None:
                ref = vals
            err = max(err, float(np.max(np.abs(vals - ref))))
    return SuiteResult("rotation_invariance", n, err, tol)


SUITES = {
    "unitarity": unitarity_suite,
    "oracle_equivalence": oracle_suite,
    "current_constancy": current_suite,
    "limit_consistency": limits_suite,
    "rotation_invariance": rotation_suite,
}


def run_all(seed: int = 0, tol_scale: float = 1.0) -> list[SuiteResult]:
    """Run every suite with its own seeded stream; tolerances times ``tol_scale``."""
    results = []
    for offset, (name, suite) in enumerate(SUITES.items()):
        rng = np.random.default_rng([seed, offset])
        res = suite(rng)
        res.tolerance *= tol_scale
        results.append(res)
    return results
