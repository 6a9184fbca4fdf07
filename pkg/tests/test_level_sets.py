import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nliouville import (
    DomainError,
    EmptySetError,
    coarea_derivative,
    dimension_constants,
    family_member,
    integrate_radial,
    isoperimetric_chain,
    level_set_samples,
    mass_ode_check,
    recombination_gaps,
    superlevel_mass,
    superlevel_radius,
    superlevel_volume,
)
from nliouville.level_sets import (
    LEVEL_COLUMNS,
    chain_spread,
    closed_form_mass,
    closed_form_radius,
    coarea_analytic,
    default_levels,
    perimeter_gradient_integral,
)

from .oracles import LEVEL


def test_spot_values_two_dimensions():
    sol = family_member(dimension_constants(2), 1.0)
    t = math.log(2.0)
    assert superlevel_radius(sol, t) == pytest.approx(1.0, rel=1e-14)
    assert superlevel_mass(sol, t) == pytest.approx(4 * math.pi, rel=1e-12)
    assert coarea_analytic(sol, t) == pytest.approx(math.pi, rel=1e-14)
    d1, d2, d3, d4 = isoperimetric_chain(sol, t)
    for d in (d1, d2, d3, d4):
        assert d == pytest.approx(16 * math.pi**2, rel=1e-8)


@pytest.mark.parametrize("key", sorted(LEVEL))
def test_level_oracle(key):
    n, lam = key
    t, R, M = LEVEL[key]
    sol = family_member(dimension_constants(n), lam)
    assert superlevel_radius(sol, t) == pytest.approx(R, rel=1e-13)
    assert closed_form_radius(sol, t) == pytest.approx(R, rel=1e-13)
    assert superlevel_mass(sol, t) == pytest.approx(M, rel=1e-11)
    assert closed_form_mass(sol, t) == pytest.approx(M, rel=1e-13)


def test_empty_superlevel_set(dim):
    sol = family_member(dim, 1.0)
    with pytest.raises(EmptySetError):
        superlevel_radius(sol, sol.t0)
    with pytest.raises(EmptySetError):
        superlevel_mass(sol, sol.t0 + 1.0)


def test_shot_level_below_range():
    dim = dimension_constants(2)
    shot = integrate_radial(1.0, 10.0, dim)
    with pytest.raises(DomainError):
        superlevel_radius(shot, float(shot.u_values[-1]) - 1.0)


def test_shot_matches_family(dim):
    exact = family_member(dim, 1.0)
    shot = integrate_radial(exact.alpha, 1e3, dim)
    for t in (exact.t0 - 0.5, exact.t0 - 5.0):
        assert superlevel_radius(shot, t) == pytest.approx(superlevel_radius(exact, t), rel=1e-8)
        assert superlevel_mass(shot, t) == pytest.approx(superlevel_mass(exact, t), rel=1e-8)


def test_coarea_finite_difference(dim):
    sol = family_member(dim, 0.8)
    analytic, fd = coarea_derivative(sol, sol.t0 - 2.0)
    assert fd == pytest.approx(analytic, rel=1e-6)
    with pytest.raises(DomainError):
        coarea_derivative(sol, sol.t0 - 1e-5, h=1e-4)
    with pytest.raises(DomainError):
        coarea_derivative(sol, sol.t0 - 1.0, h=0.0)


def test_mass_ode_and_recombinations(dim):
    sol = family_member(dim, 2.0)
    for depth in (0.1, 1.0, 10.0, 20.0):
        t = sol.t0 - depth
        assert mass_ode_check(sol, t)[2] < 1e-10
        g1, g2 = recombination_gaps(sol, t)
        assert g1 < 1e-10 and g2 < 1e-10


def test_perimeter_gradient_equals_mass(dim):
    sol = family_member(dim, 1.0)
    t = sol.t0 - 3.0
    assert perimeter_gradient_integral(sol, t) == pytest.approx(superlevel_mass(sol, t), rel=1e-10)


def test_chain_equalities_for_family(dim):
    sol = family_member(dim, 1.0)
    for depth in (0.1, 2.0, 20.0):
        chain = isoperimetric_chain(sol, sol.t0 - depth)
        assert chain_spread(chain) < 1e-6


def test_chain_step_must_stay_below_peak():
    sol = family_member(dimension_constants(2), 1.0)
    with pytest.raises(DomainError):
        isoperimetric_chain(sol, sol.t0 - 1e-3, h=1e-3)


def test_default_levels():
    lv = default_levels(3.0)
    assert len(lv) == 50
    assert np.all(np.diff(lv) > 0)
    assert lv[0] == pytest.approx(3.0 - 20.0) and lv[-1] == pytest.approx(3.0 - 0.1)


def test_samples_rows(dim):
    sol = family_member(dim, 1.0)
    samples = level_set_samples(sol, default_levels(sol.t0, count=6))
    assert len(samples) == 6
    for s in samples:
        assert len(s.row()) == len(LEVEL_COLUMNS)
        assert s.mass_gap < 1e-8 and s.perimeter_gap < 1e-8 and s.ode_residual < 1e-6
        assert max(s.recombination_gaps) < 1e-8
        assert chain_spread(s.chain) < 1e-6


def test_chain_spread_floor():
    assert chain_spread((1.0, 0.5)) == 0.5
    assert chain_spread((0.0, 0.0)) == 0.0


@settings(max_examples=25, deadline=None)
@given(n=st.integers(2, 4), lam=st.floats(0.2, 5.0), d1=st.floats(0.05, 15.0), d2=st.floats(0.05, 15.0))
def test_superlevel_sets_nested(n, lam, d1, d2):
    sol = family_member(dimension_constants(n), lam)
    lo, hi = sorted((sol.t0 - d1, sol.t0 - d2))
    assert superlevel_radius(sol, lo) >= superlevel_radius(sol, hi)
    assert superlevel_volume(sol, lo) >= superlevel_volume(sol, hi)
    assert superlevel_mass(sol, lo) >= superlevel_mass(sol, hi) * (1 - 1e-12)


@settings(max_examples=25, deadline=None)
@given(n=st.integers(2, 4), lam=st.floats(0.2, 5.0), depth=st.floats(0.05, 15.0))
def test_chain_ordering(n, lam, depth):
    sol = family_member(dimension_constants(n), lam)
    d1, d2, d3, d4 = isoperimetric_chain(sol, sol.t0 - depth)
    tol = 1e-6 * d1
    assert abs(d1 - d2) <= tol
    assert d2 >= d3 - tol and d3 >= d4 - tol
