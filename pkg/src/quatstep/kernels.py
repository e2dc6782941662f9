"""Backend selection for the hot loops.

The Cython extension is used when it was built; otherwise, or when the
environment variable ``QUATSTEP_PURE_PYTHON`` is set to a non-empty value
other than ``0``, the numpy fallback is used.
"""
import os

import numpy as np

from . import _fallback

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None

__all__ = ["BACKEND", "expsum", "available_backends", "get_expsum"]

_FORCE_PURE = os.environ.get("QUATSTEP_PURE_PYTHON", "") not in ("", "0")


def available_backends():
    names = ["numpy"]
    if _compiled is not None:
        names.insert(0, "cython")
    return names


def get_expsum(name):
    if name == "numpy":
        return _fallback.expsum
    if name == "cython":
        if _compiled is None:
            raise ImportError("quatstep._kernels was not built")
        return _compiled_expsum
    raise ValueError(f"unknown backend {name!r}")


def _compiled_expsum(x, k, a):
    return _compiled.expsum(np.ascontiguousarray(x, dtype=float),
                            np.ascontiguousarray(k, dtype=complex),
                            np.ascontiguousarray(a, dtype=complex))


BACKEND = "numpy" if (_FORCE_PURE or _compiled is None) else "cython"
expsum = get_expsum(BACKEND)
