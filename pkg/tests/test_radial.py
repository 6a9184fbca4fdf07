import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nliouville import (
    DomainError,
    IntegrationError,
    dimension_constants,
    family_member,
    integrate_radial,
    lambda_from_alpha,
    mass_in_ball,
    total_mass,
)
from nliouville import kernels
from nliouville.radial import PROFILE_COLUMNS, fit_corrected_tail, fit_log_tail, profile_rows, series_start


def test_series_start_matches_family(dim):
    sol = family_member(dim, 1.0)
    r0 = 1e-6
    u0, w0 = series_start(sol.alpha, r0, dim)
    n = dim.n
    w_exact = -(r0 ** (n - 1)) * abs(float(sol.profile_derivative(r0))) ** (n - 1)
    assert u0 == pytest.approx(float(sol.profile(r0)), rel=1e-12)
    assert w0 == pytest.approx(w_exact, rel=1e-9)


def test_series_start_rejects_nonpositive_radius():
    with pytest.raises(DomainError):
        series_start(1.0, 0.0, dimension_constants(2))


@pytest.mark.parametrize("lam", [0.5, 1.0, 2.0])
def test_shot_profile_matches_family_on_nodes(dim, lam):
    exact = family_member(dim, lam)
    shot = integrate_radial(exact.alpha, 50.0, dim)
    err = np.max(np.abs(shot.u_values - exact.profile(shot.grid)))
    assert err < 1e-9
    assert np.all(np.diff(shot.u_values) < 0)


def test_interpolant_between_nodes(dim):
    # quintic Hermite between nodes keeps the dense error at the node-error level
    exact = family_member(dim, 1.0)
    shot = integrate_radial(exact.alpha, 50.0, dim)
    r = np.geomspace(1e-3, 50.0, 9973)
    np.testing.assert_allclose(shot.profile(r), exact.profile(r), rtol=0, atol=1e-11)
    w_exact = -(r ** (dim.n - 1)) * np.abs(exact.profile_derivative(r)) ** (dim.n - 1)
    np.testing.assert_allclose(shot.flux_at(r), w_exact, rtol=1e-9)
    # below the first node the series takes over
    assert float(shot.profile(0.0)) == exact.alpha


def test_flux_mass_consistency(dim):
    shot = integrate_radial(2.0, 100.0, dim)
    exact = family_member(dim, lambda_from_alpha(dim, 2.0))
    for R in (0.01, 0.3, 4.0, 100.0):
        from_flux = mass_in_ball(shot, R)
        # closed-form mass in B_R: quantum * s / (1 + s), s = (lam R)^m
        s = (exact.lam * R) ** dim.m
        closed = dim.mass_quantum * (s / (1 + s)) ** (dim.n - 1)
        assert from_flux == pytest.approx(closed, rel=1e-8)


def test_total_mass_at_long_range(dim):
    shot = integrate_radial(1.0, 1e3, dim)
    mass, tail = total_mass(shot)
    assert tail > 0
    assert mass == pytest.approx(dim.mass_quantum, rel=1e-5)


def test_corrected_tail_handles_small_scale():
    # lam = 0.1 leaves a large r^(-m) correction on [100, 1000]
    dim = dimension_constants(3)
    shot = integrate_radial(family_member(dim, 0.1).alpha, 1e3, dim)
    beta, _ = fit_log_tail(shot, 100.0, 1e3)
    beta_c, _, d = fit_corrected_tail(shot, 100.0, 1e3)
    assert abs(beta_c - dim.beta_n) < 0.01 * abs(beta - dim.beta_n)
    assert d < 0
    assert total_mass(shot)[0] == pytest.approx(dim.mass_quantum, rel=1e-5)


def test_fit_log_tail_recovers_slope():
    dim = dimension_constants(2)
    shot = integrate_radial(math.log(8.0), 1e3, dim)
    beta, _ = fit_log_tail(shot, 100.0, 1e3)
    assert beta == pytest.approx(4.0, rel=1e-4)


def test_backends_bit_identical(dim):
    a = integrate_radial(2.5, 1e3, dim, backend="python")
    b = integrate_radial(2.5, 1e3, dim, backend="cython")
    assert a.n_rejected == b.n_rejected
    for x, y in ((a.grid, b.grid), (a.u_values, b.u_values), (a.flux, b.flux)):
        assert np.array_equal(x, y)


def test_max_step_caps_log_spacing():
    shot = integrate_radial(1.0, 1e3, dimension_constants(2), max_step=0.02)
    assert np.max(np.diff(np.log(shot.grid))) <= 0.02 * (1 + 1e-12)


def test_selected_backend_is_known():
    assert kernels.BACKEND in kernels.BACKENDS
    with pytest.raises(Exception):
        kernels.get_integrator("fortran")


def test_tighter_tolerance_reduces_error():
    dim = dimension_constants(3)
    exact = family_member(dim, 1.0)
    errs = []
    for rtol in (1e-8, 1e-10):
        shot = integrate_radial(exact.alpha, 50.0, dim, rtol=rtol)
        errs.append(np.max(np.abs(shot.u_values - exact.profile(shot.grid))))
    assert errs[1] < errs[0]


@pytest.mark.parametrize(
    "kw",
    [dict(rtol=0.0), dict(rtol=0.5), dict(atol=-1.0), dict(r_max=1e-9), dict(max_step=0.0)],
)
def test_bad_arguments(kw):
    args = dict(alpha=1.0, r_max=10.0, dim=dimension_constants(2))
    args.update(kw)
    with pytest.raises(DomainError):
        integrate_radial(**args)


def test_non_finite_alpha():
    with pytest.raises(DomainError):
        integrate_radial(math.nan, 10.0, dimension_constants(2))


def test_step_budget_exhaustion_reports_radius(monkeypatch):
    from nliouville import radial

    monkeypatch.setattr(radial, "MAX_STEPS", 10)
    with pytest.raises(IntegrationError) as info:
        radial.integrate_radial(1.0, 1e3, dimension_constants(2))
    assert 0 < info.value.last_radius < 1e3


def test_evaluation_outside_range():
    shot = integrate_radial(1.0, 10.0, dimension_constants(2))
    with pytest.raises(DomainError):
        shot.profile(11.0)
    with pytest.raises(DomainError):
        mass_in_ball(shot, 0.0)


def test_profile_rows_layout():
    shot = integrate_radial(1.0, 10.0, dimension_constants(3))
    rows = profile_rows(shot)
    assert len(rows) == len(shot.grid)
    assert len(rows[0]) == len(PROFILE_COLUMNS)
    assert rows[-1][0] == 10.0


def test_gradient_points_inward():
    dim = dimension_constants(3)
    shot = integrate_radial(1.0, 10.0, dim, center=[1.0, 0.0, 0.0])
    g = shot.gradient(np.array([2.0, 0.0, 0.0]))
    assert g[0] < 0 and g[1] == 0 and g[2] == 0


@settings(max_examples=15, deadline=None)
@given(alpha=st.floats(-3.0, 6.0), n=st.integers(2, 5))
def test_mass_in_ball_increasing_and_bounded(alpha, n):
    dim = dimension_constants(n)
    shot = integrate_radial(alpha, 1e3, dim)
    masses = -dim.sigma * shot.flux
    assert np.all(np.diff(masses) >= 0)
    assert masses[-1] < dim.mass_quantum * (1 + 1e-8)
