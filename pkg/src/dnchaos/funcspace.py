"""Chebyshev-series representation of smooth functions on a bounded interval.

A :class:`ChebFun` stores coefficients c_0..c_d of sum c_k T_k(s), where
s = (2x - a - b) / (b - a) maps [a, b] onto [-1, 1]. Values are immutable.
"""

from dataclasses import dataclass
from functools import lru_cache
import math

import numpy as np
from scipy.fft import dct
from scipy.special import roots_legendre

from . import _kernels
from .errors import ApproximationError, DomainError, IncompatibleError, InvalidInputError

__all__ = [
    "Interval",
    "ChebFun",
    "REAL",
    "COMPLEX",
    "TRAILING_CUTOFF",
    "SUP_NORM_TOL",
    "LP_NORM_TOL",
    "MAX_SAMPLE_DEGREE",
    "from_coeffs",
    "from_samples",
    "from_monomials",
    "constant",
    "zero",
    "evaluate",
    "add",
    "scale",
    "sup_norm",
    "lp_norm",
    "l2_inner",
]

REAL = "real"
COMPLEX = "complex"

TRAILING_CUTOFF = 1e-14
SUP_NORM_TOL = 1e-10
LP_NORM_TOL = 1e-8
MAX_SAMPLE_DEGREE = 2**14
_GOLDEN_WIDTH = 1e-13
_PLATEAU = np.finfo(float).eps


@dataclass(frozen=True)
class Interval:
    a: float
    b: float

    def __post_init__(self):
        a, b = float(self.a), float(self.b)
        if not (math.isfinite(a) and math.isfinite(b)) or not a < b:
            raise InvalidInputError(f"need finite a < b, got [{self.a}, {self.b}]")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    def width(self):
        return self.b - self.a

    @property
    def center(self):
        return 0.5 * (self.a + self.b)

    @property
    def half_width(self):
        return 0.5 * (self.b - self.a)

    def to_reference(self, x):
        """Affine map [a, b] -> [-1, 1]."""
        return (2.0 * np.asarray(x, dtype=np.float64) - self.a - self.b) / (self.b - self.a)

    def from_reference(self, s):
        return self.center + self.half_width * np.asarray(s, dtype=np.float64)

    def contains(self, x):
        slack = 4 * np.finfo(float).eps * max(abs(self.a), abs(self.b), 1.0)
        x = np.asarray(x, dtype=np.float64)
        return bool(np.all((x >= self.a - slack) & (x <= self.b + slack)))


class ChebFun:
    """A polynomial on an :class:`Interval` in the mapped Chebyshev basis.

    ``field`` is ``"real"`` or ``"complex"``; a real ChebFun stores float64
    coefficients, a complex one complex128. Coefficients are kept verbatim;
    nothing is chopped after construction.
    """

    __slots__ = ("_interval", "_coeffs", "_field")

    def __init__(self, interval, coeffs, field=None):
        if not isinstance(interval, Interval):
            interval = Interval(*interval)
        arr = np.atleast_1d(np.asarray(coeffs))
        if arr.ndim != 1 or arr.size == 0:
            raise InvalidInputError("coefficient list must be a non-empty 1-d sequence")
        if field is None:
            field = COMPLEX if np.iscomplexobj(arr) else REAL
        if field == REAL:
            if np.iscomplexobj(arr):
                if np.any(arr.imag != 0):
                    raise InvalidInputError("real-tagged ChebFun with nonzero imaginary parts")
                arr = arr.real
            arr = np.array(arr, dtype=np.float64)
        elif field == COMPLEX:
            arr = np.array(arr, dtype=np.complex128)
        else:
            raise InvalidInputError(f"unknown field tag {field!r}")
        if not np.all(np.isfinite(arr)):
            raise InvalidInputError("coefficients must be finite")
        arr.setflags(write=False)
        self._interval = interval
        self._coeffs = arr
        self._field = field

    @property
    def interval(self):
        return self._interval

    @property
    def coeffs(self):
        return self._coeffs

    @property
    def field(self):
        return self._field

    def degree(self):
        """Index of the last nonzero coefficient (0 for the zero function)."""
        nz = np.flatnonzero(self._coeffs)
        return int(nz[-1]) if nz.size else 0

    def is_zero(self):
        return not np.any(self._coeffs)

    def trimmed(self):
        """Coefficients up to :meth:`degree` (trailing exact zeros dropped)."""
        return self._coeffs[: self.degree() + 1]

    def with_coeffs(self, coeffs):
        return ChebFun(self._interval, coeffs, self._field)

    def as_complex(self):
        return ChebFun(self._interval, self._coeffs, COMPLEX)

    @property
    def real(self):
        return ChebFun(self._interval, np.real(self._coeffs), REAL)

    @property
    def imag(self):
        return ChebFun(self._interval, np.imag(self._coeffs), REAL)

    def __call__(self, x):
        return evaluate(self, x)

    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return add(self, scale(other, -1.0))

    def __neg__(self):
        return scale(self, -1.0)

    def __mul__(self, c):
        return scale(self, c)

    __rmul__ = __mul__

    def __repr__(self):
        return (
            f"ChebFun([{self._interval.a:g}, {self._interval.b:g}], "
            f"degree={self.degree()}, field={self._field})"
        )


def from_coeffs(interval, coeffs, field=None):
    return ChebFun(interval, coeffs, field)


def constant(interval, value, field=None):
    return ChebFun(interval, [value], field)


def zero(interval, field=REAL):
    return ChebFun(interval, [0.0], field)


def from_monomials(interval, coeffs, mapped=False, field=None):
    """Polynomial sum c_j x^j (or sum c_j ((x - a)/(b - a))^j when ``mapped``)."""
    if not isinstance(interval, Interval):
        interval = Interval(*interval)
    coeffs = np.atleast_1d(np.asarray(coeffs))
    if coeffs.size == 0:
        raise InvalidInputError("coefficient list must be non-empty")
    dom = [interval.a, interval.b]
    if mapped:
        poly = np.polynomial.Polynomial(coeffs, domain=dom, window=[0.0, 1.0])
    else:
        poly = np.polynomial.Polynomial(coeffs)
    cheb = poly.convert(kind=np.polynomial.Chebyshev, domain=dom)
    out = np.zeros(coeffs.size, dtype=cheb.coef.dtype)
    out[: cheb.coef.size] = cheb.coef
    return ChebFun(interval, out, field)


def to_mapped_monomials(f):
    """Coefficients of ``f`` in powers of (x - a)/(b - a), lowest first."""
    dom = [f.interval.a, f.interval.b]
    cheb = np.polynomial.Chebyshev(f.trimmed(), domain=dom)
    return cheb.convert(kind=np.polynomial.Polynomial, domain=dom, window=[0.0, 1.0]).coef


def chebyshev_points(n):
    """n >= 2 Chebyshev extreme points on [-1, 1], ascending."""
    return -np.cos(np.pi * np.arange(n) / (n - 1))


def _values_to_coeffs(values):
    n = values.shape[0]
    if n == 1:
        return values.copy()
    c = dct(values[::-1], type=1) / (n - 1)
    c[0] *= 0.5
    c[-1] *= 0.5
    return c


def _chop(c, tol):
    # drop the longest tail whose absolute sum stays below tol
    tails = np.cumsum(np.abs(c[::-1]))[::-1]
    keep = np.flatnonzero(tails > tol)
    return c[: keep[-1] + 1] if keep.size else c[:1] * 0


def _sample(interval, sampler, s):
    x = interval.from_reference(s)
    values = np.asarray(sampler(x))
    if values.shape != s.shape:
        values = np.broadcast_to(values, s.shape) if values.ndim == 0 else np.array([sampler(t) for t in x])
    values = np.array(values)
    if not np.all(np.isfinite(values)):
        raise ApproximationError("sampler returned non-finite values")
    return values


def from_samples(interval, sampler, tol=1e-12, field=None):
    """Adaptive Chebyshev interpolant of ``sampler`` on ``interval``.

    ``tol`` is relative to max(1, max |f| on the sample grid). Grids of
    2^k + 1 points are refined until the last coefficients fall below tol;
    the series is then rebuilt on the doubled grid, cut where it meets its
    rounding plateau, and accepted if it reproduces that grid within tol.
    """
    if not isinstance(interval, Interval):
        interval = Interval(*interval)
    if not tol > 0:
        raise InvalidInputError("tol must be positive")
    last_residual = math.inf
    n = 17
    while 2 * (n - 1) <= MAX_SAMPLE_DEGREE:
        values = _sample(interval, sampler, chebyshev_points(n))
        scale_ = max(1.0, float(np.max(np.abs(values))))
        c = _values_to_coeffs(values)
        cmax = float(np.max(np.abs(c)))
        if np.max(np.abs(c[-3:])) <= max(tol * scale_, 8 * _PLATEAU * cmax):
            fine = chebyshev_points(2 * n - 1)
            fine_values = _sample(interval, sampler, fine)
            c2 = _values_to_coeffs(fine_values)
            noise = float(np.max(np.abs(c2[n:])))
            big = np.flatnonzero(np.abs(c2) > max(2.0 * noise, _PLATEAU * cmax))
            chopped = c2[: big[-1] + 1] if big.size else c2[:1] * 0
            approx = _kernels.clenshaw(np.ascontiguousarray(chopped), fine)
            last_residual = float(np.max(np.abs(approx - fine_values)))
            if last_residual <= tol * scale_:
                if field is None:
                    field = COMPLEX if np.iscomplexobj(chopped) else REAL
                return ChebFun(interval, chopped, field)
        n = 2 * n - 1
    raise ApproximationError(
        f"no convergence up to degree {MAX_SAMPLE_DEGREE} (last residual {last_residual:.3g})",
        residual=last_residual,
    )


def evaluate(f, x):
    """Value of ``f`` at ``x`` (scalar or array) by Clenshaw recurrence."""
    if not f.interval.contains(x):
        raise DomainError(f"point outside [{f.interval.a}, {f.interval.b}]")
    s = np.clip(f.interval.to_reference(x), -1.0, 1.0)
    vals = _kernels.clenshaw(f.coeffs, np.atleast_1d(s).ravel()).reshape(np.shape(s))
    if f.field == REAL:
        vals = vals.real
    return vals[()] if vals.ndim == 0 else vals


def _check_compatible(f, g):
    if f.interval != g.interval:
        raise IncompatibleError(f"interval mismatch: {f.interval} vs {g.interval}")
    if f.field != g.field:
        raise IncompatibleError(f"field mismatch: {f.field} vs {g.field}")


def add(f, g):
    _check_compatible(f, g)
    m = max(f.coeffs.size, g.coeffs.size)
    out = np.zeros(m, dtype=f.coeffs.dtype)
    out[: f.coeffs.size] += f.coeffs
    out[: g.coeffs.size] += g.coeffs
    return ChebFun(f.interval, out, f.field)


def scale(f, c):
    if f.field == REAL and np.iscomplexobj(c) and np.imag(c) != 0:
        raise IncompatibleError("complex scalar applied to a real-tagged ChebFun")
    if f.field == REAL:
        c = float(np.real(c))
    return ChebFun(f.interval, f.coeffs * c, f.field)


def sup_norm(f):
    """max |f| over [a, b], accurate to ``SUP_NORM_TOL``.

    Grid of max(8(d+1), 257) Chebyshev points, then golden-section
    refinement around each local maximum of the grid values.
    """
    c = f.trimmed()
    if not np.any(c):
        return 0.0
    if c.size == 1:
        return float(abs(c[0]))
    n = max(8 * c.size, 257)
    s = chebyshev_points(n)
    vals = np.abs(_kernels.clenshaw(c, s))
    best = float(vals.max())
    inner = np.flatnonzero((vals[1:-1] >= vals[:-2]) & (vals[1:-1] >= vals[2:])) + 1
    peaks = list(inner)
    if vals[0] >= vals[1]:
        peaks.append(0)
    if vals[-1] >= vals[-2]:
        peaks.append(n - 1)
    peaks = np.array(peaks, dtype=np.int64)
    lo = s[np.maximum(peaks - 1, 0)]
    hi = s[np.minimum(peaks + 1, n - 1)]
    _, refined = _kernels.golden_max_abs(c, lo, hi, _GOLDEN_WIDTH)
    return max(best, float(refined.max()))


@lru_cache(maxsize=256)
def _gauss_legendre(n):
    x, w = roots_legendre(n)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def _gl_nodes_for(degree, p=1.0):
    return max(4 * (degree + 1) * math.ceil(p), 64)


def _breakpoints(c, p):
    # |f|^p has kinks at real zeros unless p is an even integer
    if np.iscomplexobj(c) or c.size < 2 or (p == int(p) and int(p) % 2 == 0):
        return np.array([-1.0, 1.0])
    big = np.flatnonzero(np.abs(c) > TRAILING_CUTOFF * np.max(np.abs(c)))
    c = c[: big[-1] + 1]
    if c.size < 2:
        return np.array([-1.0, 1.0])
    r = np.polynomial.chebyshev.chebroots(c)
    r = r[np.abs(r.imag) <= 1e-9].real if np.iscomplexobj(r) else r
    r = np.unique(r[(r > -1.0) & (r < 1.0)])
    return np.concatenate(([-1.0], r, [1.0]))


def lp_norm(f, p):
    """(integral_a^b |f|^p dx)^(1/p) by Gauss-Legendre quadrature.

    The reference interval is split at real zeros of f so each panel sees a
    smooth integrand.
    """
    p = float(p)
    if not p >= 1.0 or not math.isfinite(p):
        raise InvalidInputError(f"need 1 <= p < inf, got {p}")
    c = f.trimmed()
    if not np.any(c):
        return 0.0
    x, w = _gauss_legendre(_gl_nodes_for(c.size - 1, p))
    edges = _breakpoints(c, p)
    lo, hi = edges[:-1, None], edges[1:, None]
    nodes = (0.5 * (lo + hi) + 0.5 * (hi - lo) * x).ravel()
    weights = (0.5 * (hi - lo) * w).ravel()
    vals = np.abs(_kernels.clenshaw(c, nodes))
    # factor out the peak to keep |f|^p in range
    peak = float(vals.max())
    integral = f.interval.half_width * float(np.dot(weights, (vals / peak) ** p))
    return peak * integral ** (1.0 / p)


def l2_inner(f, g):
    """<f, g> = integral of conj(f) g over [a, b]."""
    _check_compatible(f.as_complex(), g.as_complex())
    deg = f.degree() + g.degree()
    x, w = _gauss_legendre(max(deg // 2 + 2, 64))
    fv = _kernels.clenshaw(np.ascontiguousarray(f.coeffs, dtype=np.complex128), x)
    gv = _kernels.clenshaw(np.ascontiguousarray(g.coeffs, dtype=np.complex128), x)
    return f.interval.half_width * complex(np.dot(w, np.conj(fv) * gv))
