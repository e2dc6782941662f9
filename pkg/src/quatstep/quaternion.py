"""Real quaternions in symplectic form ``q = z1 + j z2``.

Both components are complex numbers built on the unit ``i``; the only rule
needed to multiply is ``j z = conj(z) j``.  With it

    (a + j b)(c + j d) = (a c - conj(b) d) + j (conj(a) d + b c)

and ``conj(a + j b) = conj(a) - j b``.  In Cartesian components
``q = s + x i + y j + z k`` corresponds to ``z1 = s + i x``, ``z2 = y - i z``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from numbers import Number

__all__ = [
    "Quaternion",
    "ONE",
    "I",
    "J",
    "K",
    "mul",
    "conj",
    "add",
    "sub",
    "scale_real",
    "norm",
    "norm2",
    "real_part",
    "from_complex_pair",
    "to_complex_pair",
]


@dataclass(frozen=True)
class Quaternion:
    z1: complex = 0j
    z2: complex = 0j

    # make numpy scalars defer to __rmul__/__radd__ instead of broadcasting
    __array_ufunc__ = None

    def __post_init__(self):
        object.__setattr__(self, "z1", complex(self.z1))
        object.__setattr__(self, "z2", complex(self.z2))

    @classmethod
    def from_components(cls, s, x, y, z):
        return cls(complex(s, x), complex(y, -z))

    def components(self):
        """Return ``(s, x, y, z)`` with ``q = s + x i + y j + z k``."""
        return (self.z1.real, self.z1.imag, self.z2.real, -self.z2.imag)

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return Quaternion(self.z1 + other.z1, self.z2 + other.z2)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return Quaternion(self.z1 - other.z1, self.z2 - other.z2)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __neg__(self):
        return Quaternion(-self.z1, -self.z2)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        a, b, c, d = self.z1, self.z2, other.z1, other.z2
        return Quaternion(a * c - b.conjugate() * d, a.conjugate() * d + b * c)

    def __rmul__(self, other):
        # numbers on the left are complex scalars, so j-parts see conj(other)
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other * self

    def __abs__(self):
        return norm(self)

    def conjugate(self):
        return Quaternion(self.z1.conjugate(), -self.z2)

    @property
    def real(self):
        return self.z1.real


def _coerce(value):
    if isinstance(value, Quaternion):
        return value
    if isinstance(value, Number):
        return Quaternion(complex(value), 0j)
    return NotImplemented


ONE = Quaternion(1, 0)
I = Quaternion(1j, 0)
J = Quaternion(0, 1)
K = Quaternion(0, -1j)


def mul(p: Quaternion, q: Quaternion) -> Quaternion:
    """Hamilton product ``p q`` (not commutative)."""
    return p * q


def conj(q: Quaternion) -> Quaternion:
    return q.conjugate()


def add(p: Quaternion, q: Quaternion) -> Quaternion:
    return p + q


def sub(p: Quaternion, q: Quaternion) -> Quaternion:
    return p - q


def scale_real(q: Quaternion, s: float) -> Quaternion:
    s = float(s)
    return Quaternion(q.z1 * s, q.z2 * s)


def norm2(q: Quaternion) -> float:
    return abs(q.z1) ** 2 + abs(q.z2) ** 2


def norm(q: Quaternion) -> float:
    return math.hypot(abs(q.z1), abs(q.z2))


def real_part(q: Quaternion) -> float:
    return q.z1.real


def from_complex_pair(z1: complex, z2: complex = 0j) -> Quaternion:
    return Quaternion(z1, z2)


def to_complex_pair(q: Quaternion) -> tuple[complex, complex]:
    return q.z1, q.z2
