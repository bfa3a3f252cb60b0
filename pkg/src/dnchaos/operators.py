"""n-th derivative, Volterra integration, test monomials and eigenbases of D^n."""

from dataclasses import dataclass
import math

import numpy as np
from scipy.special import iv

from . import _kernels
from .errors import ApproximationError, IncompatibleError, InvalidInputError
from .funcspace import COMPLEX, REAL, ChebFun, Interval, l2_inner

__all__ = [
    "EXP_CEILING",
    "EigenData",
    "differentiate",
    "derivative_power",
    "volterra",
    "volterra_power",
    "monomial_sup",
    "monomial_lp",
    "nth_roots",
    "exponential",
    "eigenfunction_basis",
    "eigenspace_rank",
]

# reject |lambda|^(1/n) (b - a) beyond this
EXP_CEILING = 50.0
_RANK_CUTOFF = 1e-10


def _as_interval(interval):
    return interval if isinstance(interval, Interval) else Interval(*interval)


def differentiate(f):
    """Exact derivative of the polynomial ``f``."""
    d = _kernels.cheb_derivative(np.ascontiguousarray(f.trimmed()))
    return f.with_coeffs(d / f.interval.half_width)


def derivative_power(f, n):
    if n < 0:
        raise InvalidInputError("derivative order must be nonnegative")
    c = np.ascontiguousarray(f.trimmed())
    inv_h = 1.0 / f.interval.half_width
    for _ in range(n):
        if c.size == 1:
            c = np.zeros(1, dtype=c.dtype)
            break
        c = _kernels.cheb_derivative(c) * inv_h
    return f.with_coeffs(c)


def volterra(f):
    """[Bf](x) = integral of f from a to x."""
    c = _kernels.cheb_integral(np.ascontiguousarray(f.trimmed()))
    return f.with_coeffs(c * f.interval.half_width)


def volterra_power(f, n):
    if n < 0:
        raise InvalidInputError("Volterra power must be nonnegative")
    if f.is_zero():
        return f
    c = np.ascontiguousarray(f.trimmed())
    h = f.interval.half_width
    for _ in range(n):
        c = _kernels.cheb_integral(c) * h
    return f.with_coeffs(c)


def _unit_monomial_coeffs(k):
    # ((1 + s)/2)^k = cos^{2k}(theta/2): c_0 = C(2k, k)/4^k, c_j = 2 C(2k, k-j)/4^k
    denom = 4**k
    out = np.empty(k + 1)
    out[0] = math.comb(2 * k, k) / denom
    for j in range(1, k + 1):
        out[j] = 2 * math.comb(2 * k, k - j) / denom
    return out


def monomial_sup(interval, k):
    """e_k(x) = ((x - a)/(b - a))^k, unit sup norm."""
    if k < 0:
        raise InvalidInputError("k must be nonnegative")
    return ChebFun(_as_interval(interval), _unit_monomial_coeffs(k), REAL)


def monomial_lp(interval, k, p):
    """((kp + 1)/(b - a))^(1/p) ((x - a)/(b - a))^k, unit L_p norm."""
    interval = _as_interval(interval)
    if k < 0:
        raise InvalidInputError("k must be nonnegative")
    if not p >= 1:
        raise InvalidInputError(f"need p >= 1, got {p}")
    factor = ((k * p + 1.0) / interval.width()) ** (1.0 / p)
    return ChebFun(interval, factor * _unit_monomial_coeffs(k), REAL)


@dataclass(frozen=True)
class EigenData:
    lam: complex
    order: int
    roots: tuple


def nth_roots(lam, n):
    """Distinct n-th roots of ``lam``: principal root first, then counterclockwise."""
    if n < 1:
        raise InvalidInputError("order must be positive")
    lam = complex(lam)
    if lam == 0:
        return EigenData(lam, n, ())
    r = abs(lam) ** (1.0 / n)
    theta = math.atan2(lam.imag, lam.real)
    roots = []
    for k in range(n):
        z = r * complex(math.cos((theta + 2 * math.pi * k) / n), math.sin((theta + 2 * math.pi * k) / n))
        # snap rounding residue on the axes
        re = 0.0 if abs(z.real) <= 1e-15 * r else z.real
        im = 0.0 if abs(z.imag) <= 1e-15 * r else z.imag
        roots.append(complex(re, im))
    return EigenData(lam, n, tuple(roots))


def exponential(interval, mu):
    """x -> exp(mu x) as a complex ChebFun.

    Uses the generating function exp(z s) = I_0(z) + 2 sum_j I_j(z) T_j(s),
    which gives every coefficient to relative precision (sampling noise would
    be amplified by repeated differentiation).
    """
    interval = _as_interval(interval)
    mu = complex(mu)
    if abs(mu) * interval.width() > EXP_CEILING:
        raise ApproximationError(
            f"|mu|(b - a) = {abs(mu) * interval.width():.3g} exceeds ceiling {EXP_CEILING}"
        )
    z = mu * interval.half_width
    jmax = int(abs(z) + 60)
    c = 2.0 * iv(np.arange(jmax + 1), z)
    c[0] *= 0.5
    c *= np.exp(mu * interval.center)
    mags = np.abs(c)
    keep = np.flatnonzero(mags > 1e-18 * mags.max())
    return ChebFun(interval, c[: keep[-1] + 1], COMPLEX)


def eigenfunction_basis(interval, lam, n, field=COMPLEX):
    """n independent solutions of D^n f = lam f on ``interval``.

    lam = 0 gives the raw monomials 1, x, ..., x^(n-1); otherwise exp(r x)
    for each n-th root r. With ``field="real"`` (real lam only) conjugate
    root pairs are replaced by the real and imaginary parts of one member.
    """
    interval = _as_interval(interval)
    lam = complex(lam)
    if field == REAL and lam.imag != 0:
        raise IncompatibleError("a real basis needs a real eigenvalue")
    data = nth_roots(lam, n)
    if lam == 0:
        out = []
        for k in range(n):
            coeffs = np.zeros(k + 1)
            coeffs[k] = 1.0
            cheb = np.polynomial.Polynomial(coeffs).convert(
                kind=np.polynomial.Chebyshev, domain=[interval.a, interval.b]
            )
            padded = np.zeros(k + 1)
            padded[: cheb.coef.size] = cheb.coef
            out.append(ChebFun(interval, padded, field))
        return out
    if data.roots and abs(data.roots[0]) * interval.width() > EXP_CEILING:
        raise ApproximationError(
            f"|lambda|^(1/n)(b - a) = {abs(data.roots[0]) * interval.width():.3g} exceeds {EXP_CEILING}"
        )
    if field == COMPLEX:
        return [exponential(interval, r) for r in data.roots]
    out = []
    used = set()
    for i, r in enumerate(data.roots):
        if i in used:
            continue
        g = exponential(interval, r)
        if r.imag == 0:
            out.append(g.real)
            continue
        partner = min(
            (j for j in range(n) if j != i and j not in used),
            key=lambda j: abs(data.roots[j] - r.conjugate()),
        )
        used.add(partner)
        out.extend([g.real, g.imag])
    return out


def gram_matrix(basis):
    m = len(basis)
    g = np.empty((m, m), dtype=np.complex128)
    for i in range(m):
        for j in range(i, m):
            g[i, j] = l2_inner(basis[i], basis[j])
            g[j, i] = np.conj(g[i, j])
    return g


def eigenspace_rank(basis):
    """Numerical rank of the L2 Gram matrix (cutoff 1e-10 of its top eigenvalue)."""
    if not basis:
        raise InvalidInputError("basis must be non-empty")
    first = basis[0].interval
    if any(f.interval != first for f in basis):
        raise IncompatibleError("basis functions live on different intervals")
    eig = np.linalg.eigvalsh(gram_matrix(basis))
    top = eig.max()
    if top <= 0:
        return 0
    return int(np.sum(eig > _RANK_CUTOFF * top))
