"""Kernel backend selection: numba-jitted hot loops with a pure-numpy fallback.

Set CSGNN_NUMBA=0 to force the numpy path (useful for debugging and for the
kernel benchmark). If numba is missing or fails to import, the numpy path is
used automatically.
"""

import os


def _env_allows_numba() -> bool:
    return os.environ.get("CSGNN_NUMBA", "1").lower() not in ("0", "false", "no", "off")


try:
    from numba import njit as _numba_njit

    _NUMBA_IMPORTED = True
except ImportError:  # pragma: no cover
    _numba_njit = None
    _NUMBA_IMPORTED = False

USE_NUMBA = _NUMBA_IMPORTED and _env_allows_numba()


def maybe_jit(func):
    """Apply @njit(cache=True) when the numba path is active, else return func."""
    if USE_NUMBA:
        return _numba_njit(cache=True)(func)
    return func


def thread_cap() -> int:
    """Parallelism cap from CSGNN_THREADS (kernels here are single-threaded,
    so any positive cap is honored trivially)."""
    raw = os.environ.get("CSGNN_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1
