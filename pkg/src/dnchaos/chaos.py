"""Growth rates, the sufficient-condition certificate, periodic points and
orbit shadowing for A = D^n with right inverse V^n (V = Volterra).

Every routine accepts a :class:`NormMode` so the same code covers the sup
norm on C[a, b] and the L_p norm.
"""

from dataclasses import dataclass, field
import math

import numpy as np

from .errors import CapacityError, InvalidInputError
from .funcspace import ChebFun, lp_norm, sup_norm, to_mapped_monomials, zero
from .operators import derivative_power, monomial_lp, monomial_sup, volterra_power

__all__ = [
    "DEGREE_CEILING",
    "NormMode",
    "SUP",
    "GrowthReport",
    "CriterionCertificate",
    "PeriodicCertificate",
    "ShadowCertificate",
    "growth_sequence",
    "check_chaos_criterion",
    "volterra_tail_bound",
    "derivative_bound",
    "periodic_point",
    "periodic_point_near",
    "orbit_shadow",
    "unboundedness_table",
    "expected_derivative_norm",
    "norm_equivalence_ratio",
]

DEGREE_CEILING = 2**12
SHADOW_HEADROOM = 1e-3


@dataclass(frozen=True)
class NormMode:
    kind: str = "sup"
    p: float = 2.0

    def __post_init__(self):
        if self.kind not in ("sup", "lp"):
            raise InvalidInputError(f"norm mode must be 'sup' or 'lp', got {self.kind!r}")
        if self.kind == "lp" and not (self.p >= 1 and math.isfinite(self.p)):
            raise InvalidInputError(f"need 1 <= p < inf, got {self.p}")

    def __call__(self, f):
        return sup_norm(f) if self.kind == "sup" else lp_norm(f, self.p)

    def monomial(self, interval, k):
        return monomial_sup(interval, k) if self.kind == "sup" else monomial_lp(interval, k, self.p)

    def unit_power_norm(self, width, q):
        """Norm of ((x - a)/(b - a))^q on an interval of the given width."""
        if self.kind == "sup":
            return 1.0
        return (width / (q * self.p + 1.0)) ** (1.0 / self.p)

    def label(self):
        return "sup" if self.kind == "sup" else f"lp(p={self.p:g})"


SUP = NormMode("sup")


@dataclass(frozen=True)
class GrowthReport:
    """Finite-horizon record of ||op^k f||^(1/k), k = 1..horizon.

    ``op`` is ``"D"`` (A = D^order) or ``"B"`` (V^order). ``alpha_hat`` is
    the limsup estimate; ``c_hat`` = max_k ||op^k f|| / alpha_hat^k, or None
    when alpha_hat is 0.
    """

    op: str
    order: int
    horizon: int
    norm: str
    values: tuple
    norms: tuple
    limsup_estimate: float
    zero_from: int = None
    c_hat: float = None

    @property
    def alpha_hat(self):
        return self.limsup_estimate


def _window(horizon):
    return math.ceil(horizon / 4)


def growth_sequence(op, f, horizon, norm=SUP, order=1):
    if horizon < 1:
        raise InvalidInputError("horizon must be >= 1")
    if op not in ("D", "B"):
        raise InvalidInputError(f"op must be 'D' or 'B', got {op!r}")
    if order < 1:
        raise InvalidInputError("operator order must be >= 1")
    step = derivative_power if op == "D" else volterra_power
    norms, values = [], []
    zero_from = None
    g = f
    for k in range(1, horizon + 1):
        if zero_from is None:
            g = step(g, order)
            if g.is_zero():
                zero_from = k
        if zero_from is not None:
            norms.append(0.0)
            values.append(0.0)
            continue
        nk = norm(g)
        norms.append(nk)
        values.append(nk ** (1.0 / k))
    limsup = max(values[-_window(horizon):])
    c_hat = None
    if limsup > 0:
        c_hat = max(nk / limsup**k for k, nk in enumerate(norms, start=1))
    return GrowthReport(op, order, horizon, norm.label(), tuple(values), tuple(norms), limsup, zero_from, c_hat)


@dataclass(frozen=True)
class CriterionCertificate:
    right_inverse_residual: float
    growth_A: GrowthReport
    growth_B: GrowthReport
    tol: float
    passed: bool


def check_chaos_criterion(f, n, horizon, norm=SUP, tol=1e-12):
    """Check ABf = f and both finite-horizon growth rates below 1 for A = D^n, B = V^n."""
    if n < 1:
        raise InvalidInputError("n must be >= 1")
    if horizon < f.degree() + 2:
        raise InvalidInputError(f"horizon must be >= degree + 2 = {f.degree() + 2}")
    residual = norm(derivative_power(volterra_power(f, n), n) - f)
    ga = growth_sequence("D", f, horizon, norm, order=n)
    gb = growth_sequence("B", f, horizon, norm, order=n)
    ok = residual <= tol and ga.limsup_estimate < 1 and gb.limsup_estimate < 1
    return CriterionCertificate(residual, ga, gb, tol, bool(ok))


# ---------------------------------------------------------------- certified bounds


def _monomial_magnitudes(y):
    c = np.abs(to_mapped_monomials(y))
    # absorbs conversion rounding and the roundoff in the quantities being
    # bounded, so the certificate stays on the safe side of computed norms
    return c * (1.0 + 1e-10) + 1e-300 * (c > 0)


def _exp_or_inf(log_t):
    return math.exp(log_t) if log_t < 709.0 else math.inf


def volterra_tail_bound(y, m, norm=SUP):
    """Upper bound on ||V^m y|| from the monomial expansion of y.

    V^m ((x-a)/(b-a))^j = (b-a)^m j!/(j+m)! ((x-a)/(b-a))^(j+m).
    """
    if m == 0:
        return sum(
            c * norm.unit_power_norm(y.interval.width(), j) for j, c in enumerate(_monomial_magnitudes(y))
        )
    w = y.interval.width()
    total = 0.0
    for j, c in enumerate(_monomial_magnitudes(y)):
        if c == 0:
            continue
        log_t = m * math.log(w) + math.lgamma(j + 1) - math.lgamma(j + m + 1)
        total += c * _exp_or_inf(log_t) * norm.unit_power_norm(w, j + m)
    return total


def derivative_bound(y, m, norm=SUP):
    """Upper bound on ||D^m y|| from the monomial expansion of y."""
    w = y.interval.width()
    total = 0.0
    for j, c in enumerate(_monomial_magnitudes(y)):
        if j < m or c == 0:
            continue
        log_t = math.lgamma(j + 1) - math.lgamma(j - m + 1) - m * math.log(w)
        total += c * _exp_or_inf(log_t) * norm.unit_power_norm(w, j - m)
    return total


def _series_tail(y, first_power, stride, norm):
    """Sum over k >= 0 of the V-bound at power first_power + k*stride."""
    total = 0.0
    k = 0
    while True:
        t = volterra_tail_bound(y, first_power + k * stride, norm)
        total += t
        # terms fall superexponentially once past the hump
        if (t <= 1e-17 * total or t == 0.0) and first_power + k * stride > 2 * y.interval.width() + y.degree():
            return total
        k += 1


@dataclass(frozen=True)
class PeriodicCertificate:
    """g with (D^n)^N g = g up to ``invariance_residual``; ||g - y|| <= nearness_bound."""

    point: ChebFun
    target: ChebFun
    period: int
    order: int
    truncation: int
    invariance_residual: float
    residual_bound: float
    nearness_bound: float
    norm: str
    tol: float

    @property
    def passed(self):
        return self.invariance_residual <= self.tol


def periodic_point(y, N, n, K, norm=SUP, tol=1e-10):
    """g = sum_{k>=1} A^{kN} y + y + sum_{k=1}^K B^{kN} y, A = D^n, B = V^n."""
    if N < 1 or n < 1 or K < 1:
        raise InvalidInputError("N, n and K must be positive")
    step = n * N
    if y.degree() + K * step > DEGREE_CEILING:
        raise CapacityError(f"degree {y.degree() + K * step} exceeds ceiling {DEGREE_CEILING}")
    if y.is_zero():
        return PeriodicCertificate(y, y, N, n, K, 0.0, 0.0, 0.0, norm.label(), tol)
    g = y
    d_part = 0.0
    a_term = derivative_power(y, step)
    k = 1
    while not a_term.is_zero():
        g = g + a_term
        d_part += derivative_bound(y, k * step, norm)
        k += 1
        a_term = derivative_power(a_term, step)
    b_term = y
    for _ in range(K):
        b_term = volterra_power(b_term, step)
        g = g + b_term
    residual = norm(derivative_power(g, step) - g)
    residual_bound = volterra_tail_bound(y, K * step, norm)
    nearness = d_part + _series_tail(y, step, step, norm)
    return PeriodicCertificate(g, y, N, n, K, residual, residual_bound, nearness, norm.label(), tol)


def periodic_point_near(y, epsilon, n, norm=SUP, tol=1e-10):
    """Smallest period N with nN > deg y and certified ||g - y|| < epsilon."""
    if not epsilon > 0:
        raise InvalidInputError("epsilon must be positive")
    if n < 1:
        raise InvalidInputError("n must be >= 1")
    if y.is_zero():
        return periodic_point(y, 1, n, 1, norm, tol)
    N = 1
    while True:
        step = n * N
        if y.degree() + step > DEGREE_CEILING:
            raise CapacityError(f"no period below the degree ceiling meets epsilon={epsilon:g}")
        if step > y.degree() and _series_tail(y, step, step, norm) < epsilon:
            break
        N += 1
    K = 1
    while volterra_tail_bound(y, K * step, norm) > 0.5 * tol:
        K += 1
    while True:
        if y.degree() + K * step > DEGREE_CEILING:
            raise CapacityError(f"truncation K={K} at period {N} exceeds the degree ceiling")
        cert = periodic_point(y, N, n, K, norm, tol)
        if cert.passed:
            return cert
        K += 1


@dataclass(frozen=True)
class ShadowCertificate:
    vector: ChebFun
    targets: tuple
    exponents: tuple
    order: int
    visit_errors: tuple
    bounds: tuple
    epsilon: float
    norm: str

    @property
    def passed(self):
        return all(e <= self.epsilon for e in self.visit_errors)


def _interference_bound(targets, exponents, j, n, norm):
    return sum(
        volterra_tail_bound(targets[i], n * (exponents[i] - exponents[j]), norm)
        for i in range(j + 1, len(targets))
    )


def orbit_shadow(targets, epsilon, n, norm=SUP, headroom=SHADOW_HEADROOM):
    """f whose A-orbit (A = D^n) visits each target in order, within epsilon.

    f = sum_j V^{n m_j} y_j with m_1 = 0. Each gap satisfies n * gap > max
    degree, so A^{m_j} annihilates the earlier terms, and is the smallest
    such that the certified interference from later terms is below
    ``headroom * epsilon``. Gaps are fixed from the last one backwards.
    """
    targets = tuple(targets)
    if not targets:
        raise InvalidInputError("need at least one target")
    if not epsilon > 0:
        raise InvalidInputError("epsilon must be positive")
    if n < 1:
        raise InvalidInputError("n must be >= 1")
    interval = targets[0].interval
    if any(t.interval != interval for t in targets):
        raise InvalidInputError("targets live on different intervals")
    budget = headroom * epsilon
    max_deg = max(t.degree() for t in targets)
    min_gap = max_deg // n + 1
    m = len(targets)
    gaps = [0] * (m - 1)
    for j in range(m - 2, -1, -1):
        gap = min_gap
        while True:
            offs = [0, gap]
            for g in gaps[j + 1:]:
                offs.append(offs[-1] + g)
            bound = sum(
                volterra_tail_bound(targets[i], n * offs[i - j], norm) for i in range(j + 1, m)
            )
            if bound < budget:
                break
            gap += 1
            if max_deg + n * (gap + sum(gaps[j + 1:])) > DEGREE_CEILING:
                raise CapacityError("shadowing exponents exceed the degree ceiling")
        gaps[j] = gap
    exponents = [0]
    for g in gaps:
        exponents.append(exponents[-1] + g)
    if max_deg + n * exponents[-1] > DEGREE_CEILING:
        raise CapacityError("shadowing exponents exceed the degree ceiling")
    f = zero(interval, targets[0].field)
    for y, e in zip(targets, exponents):
        f = f + volterra_power(y, n * e)
    errors = tuple(norm(derivative_power(f, n * e) - y) for y, e in zip(targets, exponents))
    bounds = tuple(_interference_bound(targets, exponents, j, n, norm) for j in range(m))
    return ShadowCertificate(f, targets, tuple(exponents), n, errors, bounds, float(epsilon), norm.label())


# ---------------------------------------------------------------- tables and probes


def expected_derivative_norm(interval, k, n, norm=SUP):
    """||D^n e_k|| for the unit-norm monomial e_k of the given norm mode."""
    w = interval.width()
    base = math.perm(k, n) * w ** (-n)
    if norm.kind == "sup":
        return base
    p = norm.p
    return ((k * p + 1.0) / ((k - n) * p + 1.0)) ** (1.0 / p) * base


def unboundedness_table(interval, n, k_max, norm=SUP):
    """Rows (k, ||D^n e_k|| / ||e_k||) for k = n..k_max."""
    if n < 1 or k_max < n:
        raise InvalidInputError("need n >= 1 and k_max >= n")
    rows = []
    for k in range(n, k_max + 1):
        e = norm.monomial(interval, k)
        rows.append((k, norm(derivative_power(e, n)) / norm(e)))
    return rows


def norm_equivalence_ratio(f, n):
    """(sum_{k<=n} ||f^(k)||_inf) / (||f||_inf + ||f^(n)||_inf); 1 for f = 0."""
    if n < 1:
        raise InvalidInputError("n must be >= 1")
    norms = []
    g = f
    for k in range(n + 1):
        norms.append(sup_norm(g))
        if k < n:
            g = derivative_power(g, 1)
    denom = norms[0] + norms[-1]
    if denom == 0:
        return 1.0
    return sum(norms) / denom
