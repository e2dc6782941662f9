import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quatstep.errors import DomainError, RegimeError, RegionError
from quatstep.quaternion import Quaternion, norm
from quatstep.step import (
    PotentialStep,
    amplitudes,
    complex_limit,
    current_density,
    flux,
    kinematics,
    matching_oracle,
    phase_split,
    pure_limit,
    schrodinger_residual,
    wavefunction,
)
from quatstep.verification import current_samples, random_points

SQ2, SQ3 = math.sqrt(2), math.sqrt(3)


@st.composite
def diffusion_points(draw):
    v = draw(st.tuples(*[st.floats(-5, 5, allow_nan=False)] * 3))
    V = PotentialStep(*v)
    ratio = draw(st.floats(1.02, 50))
    E = max(V.V0, 1e-3) * ratio
    return E, V


def test_free_kinematics():
    k = kinematics(2.0, PotentialStep())
    assert (k.eps, k.rho_plus, k.rho_minus, k.w, k.eps_min) == (2.0, 2.0, 2.0, 0, 0.0)


def test_complex_step_kinematics():
    k = kinematics(2.0, PotentialStep(1, 0, 0))
    assert k.eps == pytest.approx(2.0, abs=1e-15)
    assert k.rho_minus == pytest.approx(SQ2, abs=1e-15)
    assert k.rho_plus == pytest.approx(math.sqrt(6), abs=1e-15)
    assert k.w == 0
    assert k.eps_min == pytest.approx(SQ2)


def test_pure_step_kinematics():
    k = kinematics(2.0, PotentialStep(0, 0.6, 0.8))
    rho = math.sqrt(2 * SQ3)
    assert k.rho_plus == pytest.approx(rho, abs=1e-15)
    assert k.rho_minus == pytest.approx(rho, abs=1e-15)
    eps2 = k.eps**2
    assert abs(k.w) ** 2 == pytest.approx((eps2 - rho**2) / (eps2 + rho**2), rel=1e-14)


def test_kinematics_errors():
    with pytest.raises(RegimeError):
        kinematics(1.0, PotentialStep(1, 0, 0))
    with pytest.raises(RegimeError):
        kinematics(1.1, PotentialStep(0.8, 0.8, 0.0))
    with pytest.raises(DomainError):
        kinematics(0.5, PotentialStep(0, 1, 0))
    assert issubclass(DomainError, RegimeError)


def test_kinematics_vectorized():
    V = PotentialStep(0.3, 0.4, -0.2)
    E = np.linspace(1.0, 4.0, 7)
    k = kinematics(E, V)
    for i, e in enumerate(E):
        ks = kinematics(float(e), V)
        assert k.rho_minus[i] == ks.rho_minus
        assert k.w[i] == pytest.approx(ks.w, rel=1e-15)


@given(diffusion_points())
def test_kinematic_identities(point):
    E, V = point
    k = kinematics(E, V)
    assert k.rho_plus**2 + k.rho_minus**2 == pytest.approx(4 * math.sqrt(E * E - V.Vq**2),
                                                           rel=1e-12)
    assert k.rho_plus**2 - k.rho_minus**2 == pytest.approx(4 * V.V1, abs=1e-12 * E)
    assert abs(k.w) < 1
    assert V.Vq <= V.V0 + 1e-15
    if V.V1 >= 0:
        assert k.rho_minus <= k.eps * (1 + 1e-15)


def test_no_step_amplitudes():
    a = amplitudes(kinematics(2.0, PotentialStep()))
    assert (a.r, a.t, a.r_tilde, a.t_tilde) == (0, 1, 0, 0)


def test_complex_step_amplitudes():
    a = amplitudes(kinematics(2.0, PotentialStep(1, 0, 0)))
    assert a.r == pytest.approx((2 - SQ2) / (2 + SQ2), abs=1e-15)
    assert a.t == pytest.approx(4 / (2 + SQ2), abs=1e-15)
    assert a.r.imag == 0 and a.t.imag == 0


def test_pure_step_amplitudes():
    k = kinematics(2.0, PotentialStep(0, 1, 0))
    a = amplitudes(k)
    rho = math.sqrt(2 * SQ3)
    assert a.t == pytest.approx(2 / rho, abs=1e-14)
    assert a.t.imag == 0
    expect = (2 - rho) / math.sqrt(4 + rho**2) * np.exp(1j * math.atan(2 / rho))
    assert a.r == pytest.approx(expect, abs=1e-14)


def test_phase_split_limits():
    ps = phase_split(kinematics(3.0, PotentialStep(1.2, 0, 0)))
    assert ps.theta_r == 0.0 and ps.theta_t == 0.0
    k = kinematics(3.0, PotentialStep(0, -1.0, 2.0))
    ps = phase_split(k)
    assert ps.theta_t == 0.0
    assert ps.theta_r == pytest.approx(math.atan(k.eps / k.rho_minus), abs=1e-14)


def test_phase_split_negative_v1_complex_limit():
    # r = (eps - sigma)/(eps + sigma) < 0 when V1 < 0: the polar form needs theta_r = pi
    k = kinematics(2.0, PotentialStep(-1, 0, 0))
    ps, a = phase_split(k), amplitudes(k)
    assert a.r.real < 0
    assert ps.theta_r == pytest.approx(math.pi)
    assert ps.mod_r * np.exp(1j * ps.theta_r) == pytest.approx(a.r, abs=1e-15)


def test_phase_split_recomposes(rng):
    for E, V in random_points(rng, 500):
        k = kinematics(E, V)
        ps, a = phase_split(k), amplitudes(k)
        assert abs(ps.mod_r * np.exp(1j * ps.theta_r) - a.r) < 1e-12
        assert abs(ps.mod_t * np.exp(1j * ps.theta_t) - a.t) < 1e-12
        assert -math.pi < ps.theta_r <= math.pi


def test_flux_examples():
    f = flux(kinematics(2.0, PotentialStep()), amplitudes(kinematics(2.0, PotentialStep())))
    assert (f.R, f.T) == (0.0, 1.0)
    k = kinematics(2.0, PotentialStep(1, 0, 0))
    f = flux(k, amplitudes(k))
    R = ((2 - SQ2) / (2 + SQ2)) ** 2
    assert f.R == pytest.approx(R, abs=1e-15)
    assert f.T == pytest.approx(1 - R, abs=1e-15)


@settings(max_examples=300)
@given(diffusion_points())
def test_unitarity_property(point):
    E, V = point
    k = kinematics(E, V)
    f = flux(k, amplitudes(k))
    assert f.R >= 0 and f.T >= 0
    assert abs(f.R + f.T - 1) < 1e-12


def test_unitarity_near_threshold():
    V = PotentialStep(0.3, -0.5, 0.81)
    for ratio in (1 + 1e-9, 1 + 1e-6, 1.001):
        k = kinematics(V.V0 * ratio, V)
        f = flux(k, amplitudes(k))
        assert abs(f.R + f.T - 1) < 1e-12


def test_rotation_invariance():
    base = PotentialStep(0.4, 0.9, 0.0)
    ref = None
    for alpha in np.linspace(0, 2 * np.pi, 32, endpoint=False):
        k = kinematics(2.5, base.rotated(alpha))
        a, ps = amplitudes(k), phase_split(k)
        f = flux(k, a)
        vals = np.array([a.r.real, a.r.imag, a.t.real, a.t.imag, f.R, f.T,
                         ps.theta_r, ps.theta_t])
        ref = vals if ref is None else ref
        np.testing.assert_allclose(vals, ref, atol=1e-12, rtol=0)


def test_wavefunction_free_particle():
    k = kinematics(2.0, PotentialStep())
    a = amplitudes(k)
    phi = wavefunction("free", k, a, -1.0)
    assert phi == Quaternion(np.exp(-2j), 0)
    assert norm(phi) == pytest.approx(1.0, abs=1e-15)


def test_wavefunction_continuous_at_origin(rng):
    for E, V in random_points(rng, 100):
        k = kinematics(E, V)
        a = amplitudes(k)
        for order in (0, 1):
            p = wavefunction("free", k, a, 0.0, order)
            q = wavefunction("potential", k, a, 0.0, order)
            assert norm(p - q) < 1e-12 * (1 + norm(p))


def test_wavefunction_far_field():
    k = kinematics(2.0, PotentialStep(0.2, 0.7, -0.3))
    a = amplitudes(k)
    x = 60.0
    far = Quaternion(a.t, k.w * a.t) * np.exp(1j * k.rho_minus * x)
    assert norm(wavefunction("potential", k, a, x) - far) < 1e-15


def test_region_errors():
    k = kinematics(2.0, PotentialStep(0.5, 0, 0))
    a = amplitudes(k)
    with pytest.raises(RegionError):
        wavefunction("free", k, a, 0.5)
    with pytest.raises(RegionError):
        current_density("potential", k, a, -0.5)


def test_schrodinger_residual_vanishes(rng):
    for E, V in random_points(rng, 50, ratio_range=(1.05, 10.0)):
        k = kinematics(E, V)
        a = amplitudes(k)
        for region, x in (("free", -0.7), ("free", -0.05), ("potential", 0.05),
                          ("potential", 0.9)):
            scale = E * (1 + norm(wavefunction(region, k, a, x)))
            assert norm(schrodinger_residual(region, k, a, x)) < 1e-12 * scale


def test_current_free_particle():
    k = kinematics(2.0, PotentialStep())
    a = amplitudes(k)
    for x in (-2.0, 0.0):
        assert current_density("free", k, a, x) == pytest.approx(4.0, abs=1e-15)


def test_current_constant(rng):
    for E, V in random_points(rng, 100):
        J = current_samples(E, V)
        assert (J.max() - J.min()) / abs(J.mean()) < 1e-10


def test_current_matches_flux():
    k = kinematics(2.3, PotentialStep(0.4, -0.6, 0.5))
    a = amplitudes(k)
    f = flux(k, a)
    J0 = current_density("free", k, a, 0.0)
    assert J0 == pytest.approx(current_density("potential", k, a, 0.0), rel=1e-13)
    assert J0 == pytest.approx(2 * k.eps * f.T, rel=1e-13)


def test_oracle_free():
    o = matching_oracle(kinematics(2.0, PotentialStep()))
    assert abs(o.r) < 1e-15 and abs(o.t - 1) < 1e-15


def test_oracle_complex_limit():
    o = matching_oracle(kinematics(2.0, PotentialStep(1, 0, 0)))
    assert o.r == pytest.approx((2 - SQ2) / (2 + SQ2), abs=1e-14)


def test_oracle_matches_closed_form(rng):
    for E, V in random_points(rng, 1000):
        k = kinematics(E, V)
        a, o = amplitudes(k), matching_oracle(k)
        for name in ("r", "t", "r_tilde", "t_tilde"):
            assert abs(getattr(a, name) - getattr(o, name)) < 1e-10


def test_complex_limit_values():
    cl = complex_limit(2.0, 1.0)
    assert cl.r == pytest.approx(0.171572875253809902, abs=1e-15)
    assert cl.R + cl.T == pytest.approx(1.0, abs=1e-15)
    with pytest.raises(RegimeError):
        complex_limit(1.0, 1.0)


def test_pure_limit_values():
    pl = pure_limit(2.0, 1.0)
    assert pl.R + pl.T == pytest.approx(1.0, abs=1e-14)
    small = pure_limit(2.0, 1e-4)
    assert abs(small.r) < 1e-8 and small.t == pytest.approx(1.0, abs=1e-8)
    with pytest.raises(RegimeError):
        pure_limit(1.0, 2.0)


def test_general_to_complex_limit():
    cl = complex_limit(2.0, 1.0)
    a = amplitudes(kinematics(2.0, PotentialStep(1.0, 1e-6, 0.0)))
    assert abs(a.r - cl.r) < 1e-10 and abs(a.t - cl.t) < 1e-10


def test_general_to_pure_limit_is_first_order():
    pl = pure_limit(2.0, 1.0)
    devs = []
    for off in (1e-4, 1e-6, 1e-8):
        a = amplitudes(kinematics(2.0, PotentialStep(off, 1.0, 0.0)))
        devs.append(max(abs(a.r - pl.r), abs(a.t - pl.t)) / off)
    # linear in V1 with an O(1) coefficient
    assert max(devs) < 1.0
    assert devs[-1] == pytest.approx(devs[0], rel=1e-3)
    a = amplitudes(kinematics(2.0, PotentialStep(1e-12, 1.0, 0.0)))
    assert abs(a.r - pl.r) < 1e-10 and abs(a.t - pl.t) < 1e-10


def test_phase_limits_converge():
    for vq in (1e-3, 1e-5):
        ps = phase_split(kinematics(2.0, PotentialStep(1.0, vq, 0.0)))
        assert abs(ps.theta_r) < 10 * vq**2 and abs(ps.theta_t) < 10 * vq**2
    for v1 in (1e-3, 1e-5):
        k = kinematics(2.0, PotentialStep(v1, 1.0, 0.0))
        ps = phase_split(k)
        rho = math.sqrt(2 * SQ3)
        assert abs(ps.theta_t) < 10 * v1
        assert abs(ps.theta_r - math.atan(2 / rho)) < 10 * v1


def test_from_split():
    V = PotentialStep.from_split(2.0, -1.2)
    assert V.V0 == pytest.approx(2.0)
    assert V.V3 == 0.0
    with pytest.raises(ValueError):
        PotentialStep.from_split(1.0, 1.5)
