"""Hot inner loops for Chebyshev series work.

Every kernel has two implementations: a numba ``@njit`` version and a pure
numpy version. The numba path is used when numba imports cleanly and the
environment variable ``DNCHAOS_DISABLE_NUMBA`` is unset (or ``0``). Both
paths take coefficients of a series in T_k(s), s in [-1, 1], and never
apply the interval scaling; callers do that.
"""

import os

import numpy as np

__all__ = [
    "USE_NUMBA",
    "clenshaw",
    "cheb_derivative",
    "cheb_integral",
    "golden_max_abs",
    "numpy_impl",
    "numba_impl",
]

_GOLD = 0.5 * (np.sqrt(5.0) - 1.0)


def _env_disabled():
    return os.environ.get("DNCHAOS_DISABLE_NUMBA", "").strip().lower() not in ("", "0", "false", "no")


try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and not _env_disabled()


# ---------------------------------------------------------------- numpy path


def _clenshaw_np(c, s):
    s = np.asarray(s, dtype=np.float64)
    b1 = np.zeros(s.shape, dtype=np.result_type(c.dtype, np.float64))
    b2 = np.zeros_like(b1)
    two_s = 2.0 * s
    for k in range(c.shape[0] - 1, 0, -1):
        b1, b2 = c[k] + two_s * b1 - b2, b1
    return c[0] + s * b1 - b2


def _derivative_np(c):
    m = c.shape[0]
    if m == 1:
        return np.zeros(1, dtype=c.dtype)
    # d_k = sum over j = k+1, k+3, ... of 2 j c_j; then d_0 is halved
    w = 2.0 * np.arange(m) * c
    out = np.zeros(m - 1, dtype=c.dtype)
    for parity in (0, 1):
        js = np.arange(1 + parity, m, 2)
        if js.size:
            out[js - 1] = np.cumsum(w[js][::-1])[::-1]
    out[0] *= 0.5
    return out


def _integral_np(c):
    m = c.shape[0]
    ext = np.zeros(m + 2, dtype=c.dtype)
    ext[:m] = c
    out = np.zeros(m + 1, dtype=c.dtype)
    j = np.arange(2, m + 1)
    out[1] = ext[0] - 0.5 * ext[2]
    out[2:] = (ext[j - 1] - ext[j + 1]) / (2.0 * j)
    signs = np.where(np.arange(1, m + 1) % 2 == 0, 1.0, -1.0)
    out[0] = -np.sum(signs * out[1:])
    return out


def _golden_max_abs_np(c, lo, hi, tol):
    lo = np.array(lo, dtype=np.float64)
    hi = np.array(hi, dtype=np.float64)
    x1 = hi - _GOLD * (hi - lo)
    x2 = lo + _GOLD * (hi - lo)
    f1 = np.abs(_clenshaw_np(c, x1))
    f2 = np.abs(_clenshaw_np(c, x2))
    while np.any(hi - lo > tol):
        left = f1 < f2  # maximum lies in [x1, hi]
        lo = np.where(left, x1, lo)
        hi = np.where(left, hi, x2)
        nx1 = np.where(left, x2, hi - _GOLD * (hi - lo))
        nx2 = np.where(left, lo + _GOLD * (hi - lo), x1)
        x1, x2 = nx1, nx2
        f1 = np.abs(_clenshaw_np(c, x1))
        f2 = np.abs(_clenshaw_np(c, x2))
    best_x = np.where(f1 >= f2, x1, x2)
    return best_x, np.maximum(f1, f2)


# ---------------------------------------------------------------- numba path

_BLOCK = 64

if HAVE_NUMBA:

    @numba.njit(cache=True)
    def _clenshaw_point(c, s):
        b1 = c[0] * 0.0
        b2 = c[0] * 0.0
        for k in range(c.shape[0] - 1, 0, -1):
            b0 = c[k] + 2.0 * s * b1 - b2
            b2 = b1
            b1 = b0
        return c[0] + s * b1 - b2

    @numba.njit(cache=True)
    def _clenshaw_nb(c, s):
        # blocks of points share one pass over c; the inner loop runs across
        # points so it vectorizes instead of waiting on the recurrence chain
        npts = s.shape[0]
        out = np.empty(npts, dtype=c.dtype)
        b1 = np.empty(_BLOCK, dtype=c.dtype)
        b2 = np.empty(_BLOCK, dtype=c.dtype)
        for start in range(0, npts, _BLOCK):
            m = min(_BLOCK, npts - start)
            sb = s[start:start + m]
            b1[:m] = 0.0
            b2[:m] = 0.0
            for k in range(c.shape[0] - 1, 0, -1):
                ck = c[k]
                for i in range(m):
                    b0 = ck + 2.0 * sb[i] * b1[i] - b2[i]
                    b2[i] = b1[i]
                    b1[i] = b0
            for i in range(m):
                out[start + i] = c[0] + sb[i] * b1[i] - b2[i]
        return out

    @numba.njit(cache=True)
    def _derivative_nb(c):
        m = c.shape[0]
        if m == 1:
            return np.zeros(1, dtype=c.dtype)
        d = np.zeros(m + 1, dtype=c.dtype)
        for k in range(m - 1, 0, -1):
            d[k - 1] = d[k + 1] + 2.0 * k * c[k]
        d[0] *= 0.5
        return d[: m - 1].copy()

    @numba.njit(cache=True)
    def _integral_nb(c):
        m = c.shape[0]
        ext = np.zeros(m + 2, dtype=c.dtype)
        ext[:m] = c
        out = np.zeros(m + 1, dtype=c.dtype)
        out[1] = ext[0] - 0.5 * ext[2]
        for j in range(2, m + 1):
            out[j] = (ext[j - 1] - ext[j + 1]) / (2.0 * j)
        acc = out[0] * 0.0
        sign = -1.0
        for j in range(1, m + 1):
            acc += sign * out[j]
            sign = -sign
        out[0] = -acc
        return out

    @numba.njit(cache=True)
    def _golden_max_abs_nb(c, lo, hi, tol):
        nb = lo.shape[0]
        best_x = np.empty(nb)
        best_f = np.empty(nb)
        g = 0.5 * (np.sqrt(5.0) - 1.0)
        for i in range(nb):
            a = lo[i]
            b = hi[i]
            x1 = b - g * (b - a)
            x2 = a + g * (b - a)
            f1 = abs(_clenshaw_point(c, x1))
            f2 = abs(_clenshaw_point(c, x2))
            while b - a > tol:
                if f1 < f2:
                    a = x1
                    x1 = x2
                    f1 = f2
                    x2 = a + g * (b - a)
                    f2 = abs(_clenshaw_point(c, x2))
                else:
                    b = x2
                    x2 = x1
                    f2 = f1
                    x1 = b - g * (b - a)
                    f1 = abs(_clenshaw_point(c, x1))
            if f1 >= f2:
                best_x[i] = x1
                best_f[i] = f1
            else:
                best_x[i] = x2
                best_f[i] = f2
        return best_x, best_f


class _Impl:
    def __init__(self, name, clenshaw, derivative, integral, golden):
        self.name = name
        self.clenshaw = clenshaw
        self.cheb_derivative = derivative
        self.cheb_integral = integral
        self.golden_max_abs = golden


numpy_impl = _Impl("numpy", _clenshaw_np, _derivative_np, _integral_np, _golden_max_abs_np)
numba_impl = (
    _Impl("numba", _clenshaw_nb, _derivative_nb, _integral_nb, _golden_max_abs_nb) if HAVE_NUMBA else None
)

_active = numba_impl if USE_NUMBA else numpy_impl


def clenshaw(c, s):
    """Evaluate sum c_k T_k(s) at every entry of the 1-d float array ``s``."""
    return _active.clenshaw(c, np.ascontiguousarray(s, dtype=np.float64))


def cheb_derivative(c):
    """Coefficients of d/ds of the series; length shrinks by one (minimum 1)."""
    return _active.cheb_derivative(c)


def cheb_integral(c):
    """Coefficients of the antiderivative vanishing at s = -1; length grows by one."""
    return _active.cheb_integral(c)


def golden_max_abs(c, lo, hi, tol):
    """Golden-section search for max |series| on each bracket [lo[i], hi[i]]."""
    return _active.golden_max_abs(
        c,
        np.ascontiguousarray(lo, dtype=np.float64),
        np.ascontiguousarray(hi, dtype=np.float64),
        float(tol),
    )
