"""Batched retraction kernels, compiled when available.

The Cython extension ``fermatcx._kernels`` is used if it was built; otherwise
the numpy implementation in ``fermatcx._kernels_py`` takes over.  Setting
``FERMATCX_BACKEND=numpy`` forces the fallback.
"""

import os

import numpy as np

from . import _kernels_py, retraction

try:
    if os.environ.get("FERMATCX_BACKEND", "").lower() == "numpy":
        raise ImportError("numpy backend requested")
    from . import _kernels as _compiled
except ImportError:
    _compiled = None


def _reference_batch(P, t, d):
    return np.array([retraction.retract_full(p, t, d) for p in P], dtype=np.complex128).reshape(-1, 3)


BACKEND = "cython" if _compiled is not None else "numpy"
# "reference" loops over the scalar maps; slow, but checks every precondition
_IMPLS = {"numpy": _kernels_py.retract_batch, "reference": _reference_batch}
if _compiled is not None:
    _IMPLS["cython"] = _compiled.retract_batch


def available_backends():
    return sorted(_IMPLS)


def retract_batch(P, t, d, backend=None):
    """Run the full retraction at time ``t`` on each row of an ``(n, 3)`` complex array.

    No surface checks are made; callers sample valid points.
    """
    impl = _IMPLS[backend or BACKEND]
    t = float(t)
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"t must lie in [0, 1], got {t}")
    P = np.ascontiguousarray(P, dtype=np.complex128).reshape(-1, 3)
    return impl(P, t, int(d))
