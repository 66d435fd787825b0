"""Optional numba acceleration for the machine-integer kernels.

Set ``RPE_DISABLE_NUMBA=1`` to run every kernel as plain Python/numpy.
Compiled dispatchers keep the original function as ``.py_func`` so the two
paths can be compared directly.
"""

import os

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

NUMBA_DISABLED = os.environ.get("RPE_DISABLE_NUMBA", "").strip().lower() in {"1", "true", "yes"}
NUMBA_ENABLED = numba is not None and not NUMBA_DISABLED


def njit(fn):
    if NUMBA_ENABLED:
        return numba.njit(cache=True, nogil=True)(fn)
    return fn


def python_impl(fn):
    """The uncompiled function behind a (possibly) jitted kernel."""
    return getattr(fn, "py_func", fn)
