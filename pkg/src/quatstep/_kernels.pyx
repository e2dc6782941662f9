# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled exponential sums for packet synthesis."""
import numpy as np

from libc.math cimport cos, exp, sin


def expsum(const double[::1] x, const double complex[::1] k, const double complex[::1] a):
    """out[m] = sum_n a[n] * exp(1j * k[n] * x[m]), summed in index order."""
    cdef Py_ssize_t m, n
    cdef Py_ssize_t nx = x.shape[0]
    cdef Py_ssize_t nk = k.shape[0]
    cdef double xm, amp, ph, c, s, re, im
    if a.shape[0] != nk:
        raise ValueError("k and a must have the same length")
    kr_arr = np.ascontiguousarray(np.real(k), dtype=np.float64)
    ki_arr = np.ascontiguousarray(np.imag(k), dtype=np.float64)
    ar_arr = np.ascontiguousarray(np.real(a), dtype=np.float64)
    ai_arr = np.ascontiguousarray(np.imag(a), dtype=np.float64)
    cdef double[::1] kr = kr_arr, ki = ki_arr, ar = ar_arr, ai = ai_arr
    out = np.empty(nx, dtype=np.complex128)
    cdef double complex[::1] res = out
    with nogil:
        for m in range(nx):
            xm = x[m]
            re = 0.0
            im = 0.0
            for n in range(nk):
                # exp(i k x) = exp(-Im(k) x) * (cos(Re(k) x) + i sin(Re(k) x))
                ph = kr[n] * xm
                c = cos(ph)
                s = sin(ph)
                if ki[n] != 0.0:
                    amp = exp(-ki[n] * xm)
                    c = amp * c
                    s = amp * s
                re = re + ar[n] * c - ai[n] * s
                im = im + ar[n] * s + ai[n] * c
            res[m] = re + 1j * im
    return out
