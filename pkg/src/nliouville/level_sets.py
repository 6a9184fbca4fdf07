"""Superlevel sets ``{U > t}`` of radially decreasing solutions.

For a radial profile every superlevel set is a ball ``B_{R(t)}`` about the
center, so area, mass, perimeter integrals and the coarea derivative reduce
to functions of ``R(t)`` and ``U'(R(t))``.  Closed forms valid on the
explicit family are provided separately so that the computed quantities
can be compared against them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import brentq

from .core import ExactSolution, SolutionField
from .errors import DomainError, EmptySetError
from .identities import _radial_functions, shell_integral
from .quadrature import DEFAULT_SPEC, QuadratureSpec
from .radial import RadialSolution, mass_in_ball

# below this magnitude residuals switch from relative to absolute
ABS_FLOOR = 1e-12
DEFAULT_LEVEL_COUNT = 50
DEFAULT_DEPTHS = (0.1, 20.0)

LEVEL_COLUMNS = ("t", "R", "volume", "mass", "perimeter_grad", "coarea", "D1", "D2", "D3", "D4")


def peak_value(sol: SolutionField) -> float:
    """``t0``, the value at the radial center."""
    t0 = getattr(sol, "t0", None)
    if t0 is not None:
        return float(t0)
    if sol.radial_center is None:
        raise DomainError("level-set analysis needs a radial solution")
    return float(sol.value(np.asarray(sol.radial_center, dtype=float)))


def _check_level(sol, t: float) -> float:
    t0 = peak_value(sol)
    if not t < t0:
        raise EmptySetError(f"superlevel set {{U > {t:g}}} is empty (max U = {t0:.17g})")
    return t0


def _rel(a: float, b: float) -> float:
    """Relative gap ``|a - b| / (1 + |b|)``."""
    return abs(a - b) / (1.0 + abs(b))


# ---------------------------------------------------------------------------
# closed forms on the explicit family


def closed_form_radius(sol, t: float) -> float:
    """Radius of ``{U > t}`` for the family member with the same peak value.

    Shot profiles expose the scale ``lam`` of that member, so the same
    formula serves as their reference.
    """
    n = sol.dim.n
    t0 = _check_level(sol, t)
    lam = getattr(sol, "lam")
    return math.expm1((t0 - t) / n) ** ((n - 1) / n) / lam


def closed_form_mass(sol, t: float) -> float:
    """``c_n omega_n (1 - e^((t - t0)/n))^(n-1)``."""
    n = sol.dim.n
    t0 = _check_level(sol, t)
    return sol.dim.mass_quantum * (-math.expm1((t - t0) / n)) ** (n - 1)


def closed_form_mass_derivative(sol, t: float) -> float:
    """``d/dt`` of :func:`closed_form_mass`."""
    n = sol.dim.n
    t0 = _check_level(sol, t)
    inner = -math.expm1((t - t0) / n)
    return -sol.dim.mass_quantum * (n - 1) / n * inner ** (n - 2) * math.exp((t - t0) / n)


def mass_ode_rhs(sol, M: float) -> float:
    """``-((n-1)/n)(c_n omega_n)^(1/(n-1)) M^((n-2)/(n-1)) + ((n-1)/n) M``."""
    n = sol.dim.n
    k = (n - 1) / n
    return -k * sol.dim.mass_quantum ** (1.0 / (n - 1)) * M ** ((n - 2) / (n - 1)) + k * M


# ---------------------------------------------------------------------------
# measured quantities


def superlevel_radius(sol: SolutionField, t: float) -> float:
    """Radius ``R(t)`` of the ball ``{U > t}``.

    Closed-form inversion for family members; for shot profiles a bracketed
    root search on the interpolant between the two grid nodes that straddle
    ``t``.
    """
    t0 = _check_level(sol, t)
    if isinstance(sol, ExactSolution):
        return closed_form_radius(sol, t)
    if isinstance(sol, RadialSolution):
        u = sol.u_values
        if t < u[-1]:
            raise DomainError(
                f"level {t:g} lies below U(r_max) = {u[-1]:.6g}; integrate further out"
            )
        if t >= u[0]:
            # inside the series core: alpha - coef r^m = t
            n = sol.dim.n
            coef = ((n - 1) / n) * (math.exp(sol.alpha) / n) ** (1.0 / (n - 1))
            return ((t0 - t) / coef) ** (1.0 / sol.dim.m)
        # u is decreasing; find i with u[i] >= t > u[i+1]
        i = int(np.searchsorted(-u, -t, side="right")) - 1
        lo, hi = float(sol.grid[i]), float(sol.grid[i + 1])
        if u[i] == t:
            return lo
        return brentq(lambda r: float(sol.profile(r)) - t, lo, hi, xtol=1e-300, rtol=1e-15, maxiter=200)
    u, _ = _radial_functions(sol)
    hi = 1.0
    while float(u(hi)) > t:
        hi *= 2.0
        if hi > 1e300:
            raise DomainError("level not reached")
    return brentq(lambda r: float(u(r)) - t, 0.0, hi, xtol=1e-300, rtol=1e-15, maxiter=400)


def superlevel_volume(sol: SolutionField, t: float) -> float:
    return sol.dim.omega_n * superlevel_radius(sol, t) ** sol.dim.n


def superlevel_mass(sol: SolutionField, t: float, spec: QuadratureSpec = DEFAULT_SPEC) -> float:
    """``M(t) = int_{U > t} e^U``.

    Shot profiles read it off the flux; other solutions integrate ``e^U``
    over the ball by quadrature.
    """
    R = superlevel_radius(sol, t)
    if isinstance(sol, RadialSolution):
        return mass_in_ball(sol, R) if R > 0 else 0.0
    if R == 0:
        return 0.0
    n = sol.dim.n
    u, _ = _radial_functions(sol)
    return sol.dim.sigma * shell_integral(sol, lambda r: r ** (n - 1) * np.exp(u(r)), R, spec)


def _gradient_on_level(sol, t: float) -> Tuple[float, float]:
    R = superlevel_radius(sol, t)
    _, du = _radial_functions(sol)
    return R, abs(float(du(R)))


def perimeter_gradient_integral(sol: SolutionField, t: float) -> float:
    """``int_{U = t} |grad U|^(n-1) dsigma = sigma R^(n-1) |U'(R)|^(n-1)``."""
    n = sol.dim.n
    R, g = _gradient_on_level(sol, t)
    return sol.dim.sigma * R ** (n - 1) * g ** (n - 1)


def coarea_analytic(sol: SolutionField, t: float) -> float:
    """``int_{U = t} dsigma / |grad U| = sigma R^(n-1) / |U'(R)|``."""
    n = sol.dim.n
    R, g = _gradient_on_level(sol, t)
    if g == 0:
        raise DomainError(f"gradient vanishes on the level set at t = {t:g}")
    return sol.dim.sigma * R ** (n - 1) / g


def coarea_derivative(sol: SolutionField, t: float, h: float = 1e-4) -> Tuple[float, float]:
    """``-d|Omega_t|/dt`` analytically and by a central difference of step ``h``."""
    if not h > 0:
        raise DomainError("step must be positive")
    t0 = peak_value(sol)
    if not t + h < t0:
        raise DomainError(f"t + h = {t + h:g} reaches the peak value {t0:g}")
    fd = (superlevel_volume(sol, t - h) - superlevel_volume(sol, t + h)) / (2.0 * h)
    return coarea_analytic(sol, t), fd


def mass_ode_check(sol: SolutionField, t: float, spec: QuadratureSpec = DEFAULT_SPEC):
    """``(M'(t), rhs, residual)`` with ``M' = -e^t * coarea`` and the residual over ``1 + |M'|``."""
    _check_level(sol, t)
    lhs = -math.exp(t) * coarea_analytic(sol, t)
    rhs = mass_ode_rhs(sol, superlevel_mass(sol, t, spec))
    return lhs, rhs, abs(lhs - rhs) / (1.0 + abs(lhs))


def default_step(t: float) -> float:
    return 1e-5 * (1.0 + abs(t))


def isoperimetric_chain(
    sol: SolutionField, t: float, h: Optional[float] = None, spec: QuadratureSpec = DEFAULT_SPEC
) -> Tuple[float, float, float, float]:
    """The four terms ``D1 = D2 >= D3 >= D4`` at level ``t``.

    D1
        ``-d/dt M^(n/(n-1))`` by a five-point central difference of the
        measured mass.
    D2
        ``n/(n-1) * P^(1/(n-1)) * e^t * coarea`` with ``P`` the perimeter
        gradient integral.
    D3
        ``n/(n-1) * e^t * |dOmega_t|^(n/(n-1))`` (Hoelder on the level set).
    D4
        ``(c_n omega_n)^(1/(n-1)) e^t |Omega_t|`` (isoperimetric inequality).
    """
    if h is None:
        h = default_step(t)
    n, m = sol.dim.n, sol.dim.m
    t0 = peak_value(sol)
    if not t + 2 * h < t0:
        raise DomainError(f"t + 2h = {t + 2 * h:g} reaches the peak value {t0:g}")

    def mm(s):
        return superlevel_mass(sol, s, spec) ** m

    # five-point central stencil: O(h^4) truncation at the prescribed step
    d1 = (mm(t - 2 * h) - 8 * mm(t - h) + 8 * mm(t + h) - mm(t + 2 * h)) / (-12 * h)
    R = superlevel_radius(sol, t)
    et = math.exp(t)
    d2 = m * perimeter_gradient_integral(sol, t) ** (1.0 / (n - 1)) * et * coarea_analytic(sol, t)
    d3 = m * et * (sol.dim.sigma * R ** (n - 1)) ** m
    d4 = sol.dim.mass_quantum ** (1.0 / (n - 1)) * et * sol.dim.omega_n * R**n
    return d1, d2, d3, d4


def recombination_gaps(sol: SolutionField, t: float, spec: QuadratureSpec = DEFAULT_SPEC):
    """Gaps of the two algebraic recombinations of ``M(t)``.

    ``M - omega_n e^t R^n - ((n-1)/n) omega_n |grad U|^n R^n`` and
    ``omega_n e^t R^n - (M - (c_n omega_n)^(-1/(n-1)) M^(n/(n-1)))``, each
    divided by ``1 + M``.
    """
    n = sol.dim.n
    om = sol.dim.omega_n
    M = superlevel_mass(sol, t, spec)
    R, g = _gradient_on_level(sol, t)
    et_vol = om * math.exp(t) * R**n
    first = M - et_vol - (n - 1) / n * om * g**n * R**n
    second = et_vol - (M - sol.dim.mass_quantum ** (-1.0 / (n - 1)) * M**sol.dim.m)
    return abs(first) / (1.0 + M), abs(second) / (1.0 + M)


# ---------------------------------------------------------------------------
# sampling


@dataclass(frozen=True)
class LevelSetSample:
    t: float
    radius: float
    volume: float
    mass: float
    perimeter_grad: float
    coarea_deriv: float
    chain: Tuple[float, float, float, float]
    mass_closed_form: float
    radius_closed_form: float
    perimeter_gap: float
    mass_gap: float
    ode_residual: float
    recombination_gaps: Tuple[float, float]

    def row(self) -> Tuple[float, ...]:
        return (self.t, self.radius, self.volume, self.mass, self.perimeter_grad, self.coarea_deriv) + tuple(
            self.chain
        )


def default_levels(
    t0: float, count: int = DEFAULT_LEVEL_COUNT, depths: Tuple[float, float] = DEFAULT_DEPTHS
) -> np.ndarray:
    """Levels ``t0 - d`` with ``d`` geometric over ``depths``, increasing in ``t``."""
    if count < 1:
        raise DomainError("need at least one level")
    lo, hi = depths
    if not 0 < lo <= hi:
        raise DomainError("depths must satisfy 0 < lo <= hi")
    return t0 - np.geomspace(hi, lo, count)


def level_set_sample(sol: SolutionField, t: float, spec: QuadratureSpec = DEFAULT_SPEC) -> LevelSetSample:
    R = superlevel_radius(sol, t)
    M = superlevel_mass(sol, t, spec)
    P = perimeter_gradient_integral(sol, t)
    co = coarea_analytic(sol, t)
    chain = isoperimetric_chain(sol, t, spec=spec)
    lhs, rhs, ode = mass_ode_check(sol, t, spec)
    return LevelSetSample(
        t=float(t),
        radius=R,
        volume=sol.dim.omega_n * R**sol.dim.n,
        mass=M,
        perimeter_grad=P,
        coarea_deriv=co,
        chain=chain,
        mass_closed_form=closed_form_mass(sol, t),
        radius_closed_form=closed_form_radius(sol, t),
        perimeter_gap=_rel(P, M),
        mass_gap=_rel(M, closed_form_mass(sol, t)),
        ode_residual=ode,
        recombination_gaps=recombination_gaps(sol, t, spec),
    )


def level_set_samples(
    sol: SolutionField, levels: Optional[Sequence[float]] = None, spec: QuadratureSpec = DEFAULT_SPEC
) -> List[LevelSetSample]:
    if levels is None:
        levels = default_levels(peak_value(sol))
    return [level_set_sample(sol, float(t), spec) for t in levels]


def chain_spread(chain: Sequence[float]) -> float:
    """``(max - min) / max`` over the chain terms."""
    hi = max(chain)
    return (hi - min(chain)) / hi if hi > ABS_FLOOR else hi - min(chain)
