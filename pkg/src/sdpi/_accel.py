"""Optional numba acceleration.

Set ``SDPI_DISABLE_NUMBA=1`` to force the pure-numpy kernels, e.g. for
debugging or on platforms without a working numba install.
"""
import os

_FLAG = os.environ.get("SDPI_DISABLE_NUMBA", "").strip().lower()
DISABLED_BY_ENV = _FLAG not in ("", "0", "false", "no")

try:
    import numba
except ImportError:  # pragma: no cover - numba is an optional speedup
    numba = None

HAVE_NUMBA = numba is not None
USE_NUMBA = HAVE_NUMBA and not DISABLED_BY_ENV


def njit(func):
    """Compile ``func`` in nopython mode when numba is importable.

    The undecorated function is returned otherwise, so callers must keep
    a vectorised numpy path for speed.
    """
    if not HAVE_NUMBA:
        return func
    return numba.njit(cache=True, nogil=True)(func)
