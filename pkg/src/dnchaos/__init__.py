"""Numerics for D^n and the Volterra operator on [a, b]: exact norm and
spectrum formulas, growth rates, periodic points and orbit shadowing."""

from .chaos import (
    SUP,
    CriterionCertificate,
    GrowthReport,
    NormMode,
    PeriodicCertificate,
    ShadowCertificate,
    check_chaos_criterion,
    growth_sequence,
    norm_equivalence_ratio,
    orbit_shadow,
    periodic_point,
    periodic_point_near,
    unboundedness_table,
)
from .errors import (
    ApproximationError,
    CapacityError,
    ConfigError,
    DnChaosError,
    DomainError,
    IncompatibleError,
    InvalidInputError,
)
from .funcspace import (
    ChebFun,
    Interval,
    add,
    constant,
    evaluate,
    from_coeffs,
    from_monomials,
    from_samples,
    lp_norm,
    scale,
    sup_norm,
)
from .operators import (
    derivative_power,
    differentiate,
    eigenfunction_basis,
    eigenspace_rank,
    monomial_lp,
    monomial_sup,
    nth_roots,
    volterra,
    volterra_power,
)

__version__ = "0.1.0"
