import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nliouville import (
    DomainError,
    MAX_DIMENSION,
    dimension_constants,
    eval_grad,
    eval_u,
    exact_mass,
    family_member,
    kelvin_eval,
    kelvin_gradient,
    kelvin_value,
    lambda_from_alpha,
)

from .conftest import rel
from .oracles import C_N, MASS_QUANTUM, OMEGA, PROFILE, PROFILE_DERIVATIVE


@pytest.mark.parametrize("n", range(2, 9))
def test_constants_match_gamma_oracle(n):
    d = dimension_constants(n)
    assert rel(d.omega_n, OMEGA[n]) < 1e-14
    assert rel(d.c_n, C_N[n]) < 1e-14
    assert rel(d.mass_quantum, MASS_QUANTUM[n]) < 1e-14
    assert d.sigma == pytest.approx(n * d.omega_n, rel=1e-15)
    assert d.beta_n == pytest.approx(n * n / (n - 1), rel=1e-15)


def test_hand_values():
    assert dimension_constants(2).mass_quantum == pytest.approx(8 * math.pi, rel=1e-15)
    assert dimension_constants(3).mass_quantum == pytest.approx(81 * math.pi, rel=1e-15)
    assert dimension_constants(4).mass_quantum == pytest.approx(8192 * math.pi**2 / 27, rel=1e-15)


@pytest.mark.parametrize("n", [0, 1, MAX_DIMENSION + 1])
def test_dimension_out_of_range(n):
    with pytest.raises(DomainError):
        dimension_constants(n)


def test_beta_consistency(dim):
    assert dim.beta_from_constant == pytest.approx(dim.beta_n, rel=1e-14)
    from_mass = (dim.mass_quantum / (dim.n * dim.omega_n)) ** (1.0 / (dim.n - 1))
    assert from_mass == pytest.approx(dim.beta_n, rel=1e-14)


@pytest.mark.parametrize("key", sorted(PROFILE))
def test_profile_oracle(key):
    n, lam, r = key
    sol = family_member(dimension_constants(n), lam)
    assert sol.profile(r) == pytest.approx(PROFILE[key], rel=1e-14)
    x = np.zeros(n)
    x[-1] = r
    assert eval_u(sol, x) == pytest.approx(PROFILE[key], rel=1e-14)


def test_profile_derivative_oracle():
    n, lam, r = (3, 2.0, 0.7)
    sol = family_member(dimension_constants(n), lam)
    assert sol.profile_derivative(r) == pytest.approx(PROFILE_DERIVATIVE[(n, lam, r)], rel=1e-13)


def test_peak_at_center(dim):
    sol = family_member(dim, 1.3, p=np.arange(dim.n) * 0.1)
    assert eval_u(sol, sol.radial_center) == pytest.approx(sol.t0, rel=1e-15)
    assert sol.t0 == pytest.approx(math.log(dim.c_n * 1.3**dim.n), rel=1e-15)


def test_gradient_against_finite_differences(dim):
    rng = np.random.default_rng(7)
    sol = family_member(dim, 0.8, p=rng.normal(size=dim.n))
    x = rng.normal(size=dim.n) * 2
    h = 1e-6
    fd = np.array([(eval_u(sol, x + h * e) - eval_u(sol, x - h * e)) / (2 * h) for e in np.eye(dim.n)])
    np.testing.assert_allclose(eval_grad(sol, x), fd, rtol=1e-7, atol=1e-9)


def test_gradient_vanishes_at_center(dim):
    sol = family_member(dim, 2.0)
    np.testing.assert_array_equal(eval_grad(sol, np.zeros(dim.n)), np.zeros(dim.n))


def test_vectorized_evaluation(dim):
    sol = family_member(dim, 1.0)
    pts = np.linspace(0, 3, 12 * dim.n).reshape(12, dim.n)
    vals = sol.value(pts)
    assert vals.shape == (12,)
    assert vals[3] == pytest.approx(eval_u(sol, pts[3]), rel=1e-15)


def test_exact_mass_is_quantized(dim):
    for lam in (0.5, 1.0, 2.0):
        assert rel(exact_mass(family_member(dim, lam)), dim.mass_quantum) < 1e-12


def test_lambda_alpha_roundtrip(dim):
    sol = family_member(dim, 0.37)
    assert lambda_from_alpha(dim, sol.alpha) == pytest.approx(0.37, rel=1e-14)


@pytest.mark.parametrize("lam", [0.0, -1.0, math.inf, math.nan])
def test_bad_scale(lam):
    with pytest.raises(DomainError):
        family_member(dimension_constants(2), lam)


def test_bad_center_shape():
    with pytest.raises(DomainError):
        family_member(dimension_constants(3), 1.0, p=[0.0, 0.0])


def test_kelvin_chain_rule(dim):
    sol = family_member(dim, 1.5)
    x = np.linspace(0.2, 0.9, dim.n)
    val, gnorm = kelvin_eval(sol, x)
    assert val == pytest.approx(kelvin_value(sol, x), rel=1e-15)
    h = 1e-6
    fd = np.array([(kelvin_value(sol, x + h * e) - kelvin_value(sol, x - h * e)) / (2 * h) for e in np.eye(dim.n)])
    np.testing.assert_allclose(kelvin_gradient(sol, x), fd, rtol=1e-6, atol=1e-9)
    assert gnorm == pytest.approx(np.linalg.norm(fd), rel=1e-6)


def test_kelvin_rejects_origin(dim):
    with pytest.raises(DomainError):
        kelvin_value(family_member(dim, 1.0), np.zeros(dim.n))


@settings(max_examples=40, deadline=None)
@given(
    n=st.integers(2, 6),
    lam=st.floats(0.05, 20.0),
    r=st.floats(0.0, 50.0),
)
def test_scaling_covariance(n, lam, r):
    # U_lam(r) = U_1(lam r) + n log lam
    dim = dimension_constants(n)
    a = family_member(dim, lam).profile(r)
    b = family_member(dim, 1.0).profile(lam * r) + n * math.log(lam)
    assert a == pytest.approx(b, rel=1e-12, abs=1e-12)


@settings(max_examples=40, deadline=None)
@given(n=st.integers(2, 6), lam=st.floats(0.05, 20.0), r=st.floats(1e-3, 1e3))
def test_profile_strictly_decreasing(n, lam, r):
    sol = family_member(dimension_constants(n), lam)
    assert sol.profile_derivative(r) < 0
    assert sol.profile(r * 1.01) < sol.profile(r)
