import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from hypothesis.extra.numpy import arrays

from dnchaos.errors import ApproximationError, DomainError, IncompatibleError, InvalidInputError
from dnchaos.funcspace import (
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
    zero,
)
from dnchaos.operators import monomial_lp, monomial_sup
from conftest import direct_chebyshev_sum

UNIT = Interval(0.0, 1.0)
REF = Interval(-1.0, 1.0)

coeff_vectors = arrays(np.float64, st.integers(1, 51), elements=st.floats(-1, 1))


def test_interval_rejects_empty():
    with pytest.raises(InvalidInputError):
        Interval(1.0, 1.0)
    with pytest.raises(InvalidInputError):
        Interval(2.0, -1.0)
    assert Interval(-2, 3).width() == 5.0


# from_coeffs

def test_from_coeffs_constant():
    f = from_coeffs(REF, [1.0])
    assert evaluate(f, 0.3) == 1.0
    assert evaluate(f, -1.0) == 1.0


def test_from_coeffs_t2():
    assert evaluate(from_coeffs(REF, [0, 0, 1]), 0.5) == pytest.approx(2 * 0.25 - 1, abs=1e-15)


def test_from_coeffs_mapped_t1():
    assert evaluate(from_coeffs(UNIT, [0, 1]), 0.75) == pytest.approx(0.5, abs=1e-15)


def test_from_coeffs_empty_raises():
    with pytest.raises(InvalidInputError):
        from_coeffs(UNIT, [])


def test_real_tag_rejects_imaginary_parts():
    with pytest.raises(InvalidInputError):
        ChebFun(UNIT, [1 + 1j], "real")
    assert ChebFun(UNIT, [1 + 0j], "real").field == "real"


def test_coeffs_are_immutable():
    f = from_coeffs(UNIT, [1.0, 2.0])
    with pytest.raises(ValueError):
        f.coeffs[0] = 5.0


# from_samples

def test_from_samples_constant():
    f = from_samples(UNIT, lambda x: np.ones_like(x), tol=1e-12)
    assert f.degree() == 0
    np.testing.assert_allclose(f.coeffs, [1.0])


def test_from_samples_exp():
    f = from_samples(UNIT, np.exp, tol=1e-12)
    assert f.degree() <= 20
    x = np.linspace(0, 1, 256)
    assert np.max(np.abs(evaluate(f, x) - np.exp(x))) <= 1e-12


def test_from_samples_sin():
    f = from_samples(Interval(0, math.pi), np.sin, tol=1e-12)
    x = np.linspace(0, math.pi, 256)
    assert np.max(np.abs(evaluate(f, x) - np.sin(x))) <= 1e-12


def test_from_samples_scalar_sampler():
    f = from_samples(UNIT, lambda x: 2.0 * x + 1.0)
    assert evaluate(f, 0.5) == pytest.approx(2.0, abs=1e-14)


def test_from_samples_nonconvergence_reports_residual():
    # |x - 1/3| has a kink; converges only algebraically
    with pytest.raises(ApproximationError) as info:
        from_samples(UNIT, lambda x: np.sqrt(np.abs(x - 1 / 3)), tol=1e-14)
    assert info.value.residual is not None and info.value.residual > 0


@given(arrays(np.float64, st.integers(1, 31), elements=st.floats(-1, 1)))
def test_from_samples_round_trip(c):
    f = from_coeffs(REF, c)
    g = from_samples(REF, lambda x: evaluate(f, x), tol=1e-12)
    x = np.linspace(-1, 1, 200)
    assert np.max(np.abs(evaluate(g, x) - evaluate(f, x))) <= 1e-12 * max(1.0, sup_norm(f))


# evaluate

def test_evaluate_monomial():
    assert evaluate(monomial_sup(UNIT, 3), 0.5) == pytest.approx(0.125, abs=1e-15)


@pytest.mark.parametrize("k", [0, 1, 5, 17, 30])
def test_monomial_value_at_right_end(k):
    assert evaluate(monomial_sup(UNIT, k), 1.0) == pytest.approx(1.0, abs=1e-14)


def test_evaluate_outside_raises():
    with pytest.raises(DomainError):
        evaluate(constant(UNIT, 1.0), 1.5)


@given(coeff_vectors)
def test_evaluate_matches_direct_sum(c):
    s = np.linspace(-1, 1, 101)
    np.testing.assert_allclose(evaluate(from_coeffs(REF, c), s), direct_chebyshev_sum(c, s), atol=1e-12, rtol=0)


# add / scale

def test_add_zero_is_identity():
    f = from_coeffs(UNIT, [0.3, -0.2, 0.7])
    np.testing.assert_array_equal(add(f, zero(UNIT)).coeffs, f.coeffs)


def test_scale_t1():
    assert evaluate(scale(from_coeffs(REF, [0, 1]), 2.0), 1.0) == 2.0


def test_add_monomials():
    assert evaluate(add(monomial_sup(UNIT, 1), monomial_sup(UNIT, 2)), 0.5) == pytest.approx(0.75, abs=1e-15)


def test_add_incompatible():
    with pytest.raises(IncompatibleError):
        add(constant(UNIT, 1.0), constant(REF, 1.0))
    with pytest.raises(IncompatibleError):
        add(constant(UNIT, 1.0), constant(UNIT, 1j))
    with pytest.raises(IncompatibleError):
        scale(constant(UNIT, 1.0), 1j)


# norms

def test_sup_norm_zero():
    assert sup_norm(zero(UNIT)) == 0.0


@pytest.mark.parametrize("k", [0, 1, 4, 12, 30])
def test_sup_norm_monomial(k):
    assert sup_norm(monomial_sup(UNIT, k)) == pytest.approx(1.0, abs=1e-12)


def test_sup_norm_sin_quarter_period():
    f = from_samples(Interval(0, math.pi / 2), np.sin)
    assert abs(sup_norm(f) - 1.0) <= 1e-10


def test_sup_norm_interior_peak():
    # 1 - 4(x - 0.3)^2 on [0,1] peaks at 1 inside
    f = from_monomials(UNIT, [1 - 4 * 0.09, 8 * 0.3, -4])
    assert sup_norm(f) == pytest.approx(1.0, abs=1e-12)


def test_sup_norm_complex():
    f = from_samples(Interval(0, 2 * math.pi), lambda x: np.exp(1j * x) * (1 + 0.5 * np.cos(x)))
    assert sup_norm(f) == pytest.approx(1.5, abs=1e-10)


def test_lp_norm_constant():
    assert lp_norm(constant(UNIT, 1.0), 2) == pytest.approx(1.0, abs=1e-14)


def test_lp_norm_identity():
    assert lp_norm(from_monomials(UNIT, [0, 1]), 2) == pytest.approx(1 / math.sqrt(3), abs=1e-14)


@pytest.mark.parametrize("p", [1.0, 2.0, 3.5])
@pytest.mark.parametrize("k", [0, 1, 3, 10, 20])
def test_lp_norm_normalized_monomial(k, p):
    assert abs(lp_norm(monomial_lp(UNIT, k, p), p) - 1.0) <= 1e-8


def test_lp_norm_rejects_small_p():
    with pytest.raises(InvalidInputError):
        lp_norm(constant(UNIT, 1.0), 0.5)


def _exact_l2_squared(mono):
    # integral over [0, 1] of (sum a_j x^j)^2 = sum a_i a_j / (i + j + 1)
    i = np.arange(len(mono))
    return float(mono @ (1.0 / (i[:, None] + i[None, :] + 1)) @ mono)


@given(arrays(np.float64, st.integers(1, 41), elements=st.floats(-1, 1)))
def test_lp_quadrature_exact_for_polynomials(mono):
    exact = _exact_l2_squared(mono)
    got = lp_norm(from_monomials(UNIT, mono), 2) ** 2
    assert abs(got - exact) <= 1e-12 * max(exact, 1e-300) + 1e-300 or abs(got - exact) <= 1e-13


@given(coeff_vectors, coeff_vectors, st.floats(-3, 3))
def test_norm_axioms(c1, c2, lam):
    f, g = from_coeffs(REF, c1), from_coeffs(REF, c2)
    sf, sg = sup_norm(f), sup_norm(g)
    assert sup_norm(scale(f, lam)) == pytest.approx(abs(lam) * sf, rel=1e-12, abs=1e-300)
    assert sup_norm(add(f, g)) <= sf + sg + 1e-12
    for p in (1.0, 2.0, 3.5):
        lf, lg = lp_norm(f, p), lp_norm(g, p)
        assert lp_norm(scale(f, lam), p) == pytest.approx(abs(lam) * lf, rel=1e-12, abs=1e-300)
        # quadrature roundoff scales with the norms themselves
        assert lp_norm(add(f, g), p) <= lf + lg + 1e-12 * max(1.0, lf + lg)


@given(coeff_vectors)
def test_sup_norm_dominates_probes(c):
    f = from_coeffs(REF, c)
    x = np.random.default_rng(len(c)).uniform(-1, 1, 1000)
    assert sup_norm(f) >= np.max(np.abs(evaluate(f, x))) - 1e-12
