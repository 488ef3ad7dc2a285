"""Compensated double-sum kernels behind the additive statistics.

Every statistic in the package reduces to ``sum_i sum_j g(u[i] * v[j])``.
The numba kernel and the numpy fallback perform the same floating point
operations in the same order (rows of Neumaier sums, then a Neumaier sum
of the row totals), so for kernels built from +, *, abs they agree bit for
bit.  Set ``SPACINGS2D_DISABLE_NUMBA=1`` to force the fallback.
"""
import math
import os

import numpy as np

SQUARE = 0
ABSDEV = 1
NEGLOG = 2
IDENTITY = 3

_NUMPY_KERNELS = {
    SQUARE: lambda t: t * t,
    ABSDEV: lambda t: np.abs(t - 1.0),
    NEGLOG: lambda t: -np.log(t),
    IDENTITY: lambda t: t,
}


def _disabled():
    return os.environ.get("SPACINGS2D_DISABLE_NUMBA", "").strip().lower() not in ("", "0", "false", "no")


try:
    import numba
except ImportError:  # pragma: no cover
    numba = None

HAVE_NUMBA = numba is not None
USE_NUMBA = HAVE_NUMBA and not _disabled()
BACKEND = "numba" if USE_NUMBA else "numpy"


def pair_sum_numpy(u, v, code=None, func=None):
    """Fallback: columns are swept in order, all rows advance together."""
    if func is None:
        func = _NUMPY_KERNELS[code]
    n = u.shape[0]
    s = np.zeros(n)
    comp = np.zeros(n)
    for j in range(v.shape[0]):
        x = func(u * v[j])
        t = s + x
        comp += np.where(np.abs(s) >= np.abs(x), (s - t) + x, (x - t) + s)
        s = t
    rows = s + comp
    total = 0.0
    tc = 0.0
    for r in rows.tolist():
        y = total + r
        if abs(total) >= abs(r):
            tc += (total - y) + r
        else:
            tc += (r - y) + total
        total = y
    return total + tc


if HAVE_NUMBA:

    @numba.njit(cache=True, nogil=True)
    def _pair_sum_jit(u, v, code):
        total = 0.0
        tc = 0.0
        for i in range(u.shape[0]):
            s = 0.0
            comp = 0.0
            ui = u[i]
            for j in range(v.shape[0]):
                t = ui * v[j]
                if code == 0:
                    x = t * t
                elif code == 1:
                    x = abs(t - 1.0)
                elif code == 2:
                    x = -math.log(t)
                else:
                    x = t
                y = s + x
                if abs(s) >= abs(x):
                    comp += (s - y) + x
                else:
                    comp += (x - y) + s
                s = y
            r = s + comp
            y = total + r
            if abs(total) >= abs(r):
                tc += (total - y) + r
            else:
                tc += (r - y) + total
            total = y
        return total + tc

    def pair_sum_numba(u, v, code=None, func=None):
        if code is None:
            return pair_sum_numpy(u, v, func=func)
        return _pair_sum_jit(u, v, code)

else:  # pragma: no cover
    pair_sum_numba = None


def pair_sum(u, v, code=None, func=None):
    """Compensated ``sum_i sum_j g(u[i] * v[j])`` in fixed i-major order.

    ``code`` selects a built-in kernel (fast path); ``func`` is a vectorized
    callable used when no code is given.
    """
    u = np.ascontiguousarray(u, dtype=np.float64)
    v = np.ascontiguousarray(v, dtype=np.float64)
    if USE_NUMBA and code is not None:
        return float(_pair_sum_jit(u, v, code))
    return float(pair_sum_numpy(u, v, code, func))
