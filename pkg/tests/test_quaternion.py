import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from quatstep.quaternion import (
    I,
    J,
    K,
    ONE,
    Quaternion,
    add,
    conj,
    from_complex_pair,
    mul,
    norm,
    norm2,
    real_part,
    scale_real,
    sub,
    to_complex_pair,
)

finite = st.floats(-10, 10, allow_nan=False)
quaternions = st.builds(Quaternion.from_components, finite, finite, finite, finite)
complexes = st.builds(complex, finite, finite)


def close(p, q, tol=1e-12):
    return abs(p.z1 - q.z1) <= tol and abs(p.z2 - q.z2) <= tol


def random_unit(rng):
    c = rng.normal(size=4)
    return Quaternion.from_components(*(c / np.linalg.norm(c)))


def test_hamilton_table():
    assert mul(I, J) == K
    assert J * K == I
    assert K * I == J
    for u in (I, J, K):
        assert u * u == -ONE
    assert I * J * K == -ONE


def test_j_conjugates_complex():
    z = 0.3 + 0.7j
    assert J * z == Quaternion(0, z)
    assert J * z == z.conjugate() * J


def test_i_and_j_anticommute():
    assert I * J + J * I == Quaternion()


def test_components_roundtrip():
    q = Quaternion.from_components(1.0, -2.0, 3.0, -4.0)
    assert q.components() == (1.0, -2.0, 3.0, -4.0)
    assert K.components() == (0.0, 0.0, 0.0, 1.0)


def test_conj_examples():
    assert conj(ONE) == ONE
    assert conj(J) == -J
    assert conj(Quaternion.from_components(1, 2, 3, 4)).components() == (1, -2, -3, -4)


def test_plumbing():
    assert norm(I + J) == pytest.approx(math.sqrt(2), abs=1e-15)
    assert to_complex_pair(from_complex_pair(1 + 2j, 3 - 4j)) == (1 + 2j, 3 - 4j)
    assert add(I, J) == sub(I, -J)
    assert scale_real(I, 2.5) == Quaternion(2.5j, 0)
    assert real_part(Quaternion(3 + 1j, 5)) == 3.0
    assert norm2(Quaternion(3, 4j)) == pytest.approx(25.0)


@given(complexes, complexes)
def test_complex_subalgebra(a, b):
    p, q = from_complex_pair(a), from_complex_pair(b)
    assert p * q == q * p
    assert close(p * q, from_complex_pair(a * b), 1e-12 * (1 + abs(a * b)))


@given(quaternions, quaternions, quaternions)
def test_associative(p, q, r):
    scale = 1e-13 * (1 + norm(p) * norm(q) * norm(r))
    assert close((p * q) * r, p * (q * r), scale)


@given(quaternions, quaternions)
def test_conj_reverses_products(p, q):
    assert close(conj(p * q), conj(q) * conj(p), 1e-12 * (1 + norm(p) * norm(q)))


@given(quaternions)
def test_q_times_conj_is_norm(q):
    assert close(q * conj(q), Quaternion(norm2(q), 0), 1e-12 * (1 + norm2(q)))


def test_norm_multiplicative_many(rng):
    worst = 0.0
    for _ in range(10_000):
        c = rng.normal(size=8)
        p = Quaternion.from_components(*c[:4])
        q = Quaternion.from_components(*c[4:])
        worst = max(worst, abs(norm(p * q) - norm(p) * norm(q)) / (norm(p) * norm(q)))
    assert worst < 1e-12


def test_associative_unit_operands(rng):
    for _ in range(1000):
        p, q, r = (random_unit(rng) for _ in range(3))
        assert close((p * q) * r, p * (q * r), 1e-13)


def test_numpy_scalars_defer():
    q = np.float64(2.0) * J
    assert isinstance(q, Quaternion)
    assert q == Quaternion(0, 2)
    assert np.complex128(1j) * J == Quaternion(0, -1j)
