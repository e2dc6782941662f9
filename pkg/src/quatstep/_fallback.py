"""Pure numpy versions of the compiled kernels in ``_kernels.pyx``."""
import numpy as np

_CHUNK = 2048


def expsum(x, k, a):
    """out[m] = sum_n a[n] * exp(1j * k[n] * x[m])."""
    x = np.ascontiguousarray(x, dtype=float)
    k = np.ascontiguousarray(k, dtype=complex)
    a = np.ascontiguousarray(a, dtype=complex)
    if a.shape != k.shape:
        raise ValueError("k and a must have the same length")
    out = np.empty(x.shape[0], dtype=complex)
    for lo in range(0, x.shape[0], _CHUNK):
        xs = x[lo:lo + _CHUNK]
        out[lo:lo + _CHUNK] = np.exp(1j * np.multiply.outer(xs, k)) @ a
    return out
