"""Integral identities checked on concrete solutions.

Radial solutions centered at the evaluation point take one-dimensional
paths (shell integrals and closed-form boundary values) in every dimension.
Off-center evaluation uses the tensor sphere rules and is limited to
n = 2, 3.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Tuple

import numpy as np
from scipy.stats import norm, qmc

from .core import Dimension, ExactSolution, SolutionField, exact_mass, kelvin_gradient
from .errors import DomainError, NumericError, UnsupportedError
from .quadrature import (
    DEFAULT_SPEC,
    QuadratureSpec,
    ball_integral,
    interval_integral,
    axisymmetric_sphere_integral,
    offset_radial_ball_integral,
    radial_integral,
    sphere_integral,
)

F_VARIANTS = ("expm1", "exp")


# ---------------------------------------------------------------------------
# radial helpers


def _center_matches(sol: SolutionField, y: np.ndarray) -> bool:
    c = sol.radial_center
    if c is None:
        return False
    c = np.asarray(c, dtype=float)
    return bool(np.linalg.norm(c - y) <= 1e-14 * (1.0 + np.linalg.norm(y)))


def _radial_functions(sol: SolutionField) -> Tuple[Callable, Callable]:
    """``(U(r), U'(r))`` about the radial center of ``sol``."""
    if hasattr(sol, "profile") and hasattr(sol, "profile_derivative"):
        return sol.profile, sol.profile_derivative
    center = np.asarray(sol.radial_center, dtype=float)
    e1 = np.zeros(sol.dim.n)
    e1[0] = 1.0

    def u(r):
        return sol.value(center + np.asarray(r, dtype=float)[..., None] * e1)

    def du(r):
        return sol.gradient(center + np.asarray(r, dtype=float)[..., None] * e1)[..., 0]

    return u, du


def _scale_length(sol) -> float:
    lam = getattr(sol, "lam", None)
    return 1.0 / lam if lam else 1.0


def _node_radii(sol) -> Optional[np.ndarray]:
    # interpolated profiles are only C^1 across their nodes
    return getattr(sol, "grid", None)


def shell_integral(
    sol: SolutionField, h: Callable, R: float, spec: QuadratureSpec = DEFAULT_SPEC
) -> float:
    """``int_0^R h(r) dr`` for a radial integrand attached to ``sol``.

    The core ``[0, knee]`` (``knee`` = one length scale of the solution) is
    integrated in ``r``; the remainder in ``log r``, where far-field power
    laws become smooth exponentials.
    """
    knee = min(_scale_length(sol), R)
    nodes = _node_radii(sol)
    value, _ = radial_integral(h, 0.0, knee, spec, nodes)
    if R > knee:
        s_nodes = None if nodes is None else np.log(nodes[nodes > 0])
        tail, _ = interval_integral(
            lambda s: h(np.exp(s)) * np.exp(s), math.log(knee), math.log(R), spec, s_nodes
        )
        value += tail
    return value


def _kink_hints(sol: SolutionField, y: np.ndarray):
    """Axis and shell radius where ``|x - center|^m`` behaviour meets the shells."""
    c = sol.radial_center
    if c is None:
        return None, None
    d = np.asarray(c, dtype=float) - y
    dist = float(np.linalg.norm(d))
    if dist == 0:
        return None, None
    return d, [dist]


def _offset_volume_integral(sol: SolutionField, h: Callable, y: np.ndarray, R: float, spec) -> float:
    """``int_{B_R(y)} h(U)``: 1-D shell reduction about the radial center, tensor rule otherwise."""
    c = sol.radial_center
    if c is not None:
        u, _ = _radial_functions(sol)
        nodes = _node_radii(sol)
        bp = [_scale_length(sol)] if nodes is None else np.append(nodes, _scale_length(sol))
        return offset_radial_ball_integral(lambda r: h(u(r)), R, y, c, sol.dim, spec, breakpoints=bp)
    return ball_integral(lambda x: h(sol.value(x)), R, y, sol.dim, spec)


def _boundary_integral(sol: SolutionField, g: Callable, y: np.ndarray, R: float, spec) -> float:
    """Surface integral over ``|x - y| = R``; axisymmetric about the radial center when there is one."""
    axis, _ = _kink_hints(sol, y)
    if axis is not None:
        return axisymmetric_sphere_integral(g, R, y, axis, sol.dim, spec)
    return sphere_integral(g, R, y, sol.dim, spec)


def _require_supported(sol: SolutionField, y: np.ndarray) -> bool:
    centered = _center_matches(sol, y)
    if not centered and sol.dim.n not in (2, 3):
        raise UnsupportedError(
            f"off-center identities need n in (2, 3) or a radial center at y; got n = {sol.dim.n}"
        )
    return centered


# ---------------------------------------------------------------------------
# Pohozaev


@dataclass(frozen=True)
class PohozaevReport:
    center: Tuple[float, ...]
    radius: float
    lhs: float
    boundary_F_term: float
    boundary_cross_term: float
    boundary_energy_term: float
    residual: float
    rel_residual: float
    variant: str = "expm1"

    @property
    def rhs(self) -> float:
        return self.boundary_F_term + self.boundary_cross_term + self.boundary_energy_term


def _F(variant: str):
    if variant == "expm1":
        return np.expm1
    if variant == "exp":
        return np.exp
    raise DomainError(f"unknown F variant {variant!r}; choose from {F_VARIANTS}")


def pohozaev_residual(
    sol: SolutionField,
    y,
    R: float,
    spec: QuadratureSpec = DEFAULT_SPEC,
    variant: str = "expm1",
) -> PohozaevReport:
    """Pohozaev balance on ``B_R(y)`` for ``F(t) = e^t - 1`` (or ``e^t``).

    ``n int_B F(U) = int_dB F(U)<x-y,nu> + |grad U|^(n-2)<x-y,grad U> d_nu U
    - |grad U|^n/n <x-y,nu>``.
    """
    if not R > 0:
        raise DomainError(f"radius must be positive, got {R!r}")
    F = _F(variant)
    n = sol.dim.n
    sigma = sol.dim.sigma
    y = np.asarray(y, dtype=float).reshape(n)
    if _require_supported(sol, y):
        u, du = _radial_functions(sol)
        lhs = n * sigma * shell_integral(sol, lambda r: r ** (n - 1) * F(u(r)), R, spec)
        uR = float(u(R))
        gR = abs(float(du(R)))
        area = sigma * R ** (n - 1)
        # on the sphere <x-y,nu> = R and <x-y,grad U> d_nu U = R |U'|^2
        f_term = float(F(uR)) * R * area
        cross = gR**n * R * area
        energy = -(gR**n) / n * R * area
    else:
        lhs = n * _offset_volume_integral(sol, F, y, R, spec)

        def boundary(which):
            def g(x, nu):
                grad = sol.gradient(x)
                gnorm = np.linalg.norm(grad, axis=-1)
                xy = np.sum((x - y) * nu, axis=-1)
                if which == "F":
                    return F(sol.value(x)) * xy
                if which == "cross":
                    return gnorm ** (n - 2) * np.sum((x - y) * grad, axis=-1) * np.sum(grad * nu, axis=-1)
                return -(gnorm**n) / n * xy

            return _boundary_integral(sol, g, y, R, spec)

        f_term, cross, energy = boundary("F"), boundary("cross"), boundary("energy")
    residual = lhs - (f_term + cross + energy)
    return PohozaevReport(
        center=tuple(float(v) for v in y),
        radius=float(R),
        lhs=float(lhs),
        boundary_F_term=float(f_term),
        boundary_cross_term=float(cross),
        boundary_energy_term=float(energy),
        residual=float(residual),
        rel_residual=abs(residual) / (1.0 + abs(lhs)),
        variant=variant,
    )


def pohozaev_shift_gap(sol: SolutionField, y, R: float, spec: QuadratureSpec = DEFAULT_SPEC):
    """Both Pohozaev reports and ``|residual(e^t) - residual(e^t - 1)| / (1 + |lhs|)``."""
    a = pohozaev_residual(sol, y, R, spec, "expm1")
    b = pohozaev_residual(sol, y, R, spec, "exp")
    return a, b, abs(b.residual - a.residual) / (1.0 + max(abs(a.lhs), abs(b.lhs)))


# ---------------------------------------------------------------------------
# mass and flux


def _flux_out(sol: SolutionField, y: np.ndarray, R: float, spec, centered: bool) -> float:
    # -int_{dB} |grad U|^(n-2) d_nu U
    n = sol.dim.n
    if centered:
        _, du = _radial_functions(sol)
        return sol.dim.sigma * R ** (n - 1) * abs(float(du(R))) ** (n - 1)
    def g(x, nu):
        grad = sol.gradient(x)
        return -np.linalg.norm(grad, axis=-1) ** (n - 2) * np.sum(grad * nu, axis=-1)

    return _boundary_integral(sol, g, y, R, spec)


def flux_through_sphere(sol: SolutionField, R: float, y=None, spec: QuadratureSpec = DEFAULT_SPEC) -> float:
    """Outward n-Laplace flux ``-int_{|x-y|=R} |grad U|^(n-2) d_nu U`` (``y`` defaults to the radial center)."""
    if y is None:
        y = sol.radial_center if sol.radial_center is not None else np.zeros(sol.dim.n)
    y = np.asarray(y, dtype=float).reshape(sol.dim.n)
    centered = _require_supported(sol, y)
    return _flux_out(sol, y, R, spec, centered)


def mass_flux_identity(
    sol: SolutionField, y, R: float, spec: QuadratureSpec = DEFAULT_SPEC
) -> Tuple[float, float, float]:
    """Divergence balance ``int_{B_R(y)} e^U`` vs the boundary flux; returns ``(interior, flux, rel_gap)``."""
    if not R > 0:
        raise DomainError(f"radius must be positive, got {R!r}")
    n = sol.dim.n
    y = np.asarray(y, dtype=float).reshape(n)
    centered = _require_supported(sol, y)
    if centered:
        u, _ = _radial_functions(sol)
        interior = sol.dim.sigma * shell_integral(sol, lambda r: r ** (n - 1) * np.exp(u(r)), R, spec)
    else:
        interior = _offset_volume_integral(sol, np.exp, y, R, spec)
    flux = _flux_out(sol, y, R, spec, centered)
    return float(interior), float(flux), abs(interior - flux) / (1.0 + abs(interior))


# ---------------------------------------------------------------------------
# limit mass equation


def limit_mass_equation(gamma: float, dim: Dimension) -> float:
    """``n g - omega_n (n-1) (g/(n omega_n))^(n/(n-1))``."""
    n, om = dim.n, dim.omega_n
    return n * gamma - om * (n - 1) * (gamma / (n * om)) ** dim.m


def limit_mass_root(dim: Dimension, rtol: float = 4e-16, max_iter: int = 200) -> float:
    """Positive root of :func:`limit_mass_equation` by bracketed Newton.

    The bracket is ``[omega_n, 10^n c_n omega_n]``; a Newton step that leaves
    the current bracket is replaced by bisection.
    """
    n, om = dim.n, dim.omega_n
    lo, hi = om, 10.0**n * dim.mass_quantum
    f_lo, f_hi = limit_mass_equation(lo, dim), limit_mass_equation(hi, dim)
    if not (f_lo > 0 > f_hi):
        raise NumericError(f"limit mass bracket [{lo:g}, {hi:g}] does not straddle a root")
    x = math.sqrt(lo * hi)
    for _ in range(max_iter):
        fx = limit_mass_equation(x, dim)
        if fx == 0:
            return x
        if fx > 0:
            lo = x
        else:
            hi = x
        # d/dg of the equation: n - (g/(n omega_n))^(1/(n-1))
        dfx = n - (x / (n * om)) ** (1.0 / (n - 1))
        step_ok = dfx != 0
        if step_ok:
            x_new = x - fx / dfx
            step_ok = lo < x_new < hi
        if not step_ok:
            x_new = 0.5 * (lo + hi)
        if abs(x_new - x) <= rtol * abs(x_new):
            return x_new
        x = x_new
    raise NumericError("limit mass iteration did not converge")


# ---------------------------------------------------------------------------
# asymptotics


@dataclass(frozen=True)
class AsymptoticsReport:
    radii: Tuple[float, ...]
    slope_samples: Tuple[float, ...]
    fitted_beta: float
    beta_n: float
    beta_from_mass: float
    remainder_samples: Tuple[float, ...]
    gamma_from_flux: Tuple[float, ...]


def sample_directions(n: int, count: int) -> np.ndarray:
    """``count`` deterministic unit vectors in R^n.

    Equispaced angles for n = 2; otherwise an unscrambled Halton sequence
    pushed through the normal quantile and normalized.
    """
    if count < 1:
        raise DomainError("need at least one direction")
    if n == 2:
        theta = 2.0 * math.pi * np.arange(count) / count
        return np.stack([np.cos(theta), np.sin(theta)], axis=-1)
    halton = qmc.Halton(d=n, scramble=False)
    halton.fast_forward(1)  # the first Halton point is the origin
    g = norm.ppf(halton.random(count))
    return g / np.linalg.norm(g, axis=-1, keepdims=True)


def _default_mass(sol: SolutionField) -> float:
    if isinstance(sol, ExactSolution):
        return exact_mass(sol)
    from .radial import RadialSolution, total_mass

    if isinstance(sol, RadialSolution):
        return total_mass(sol)[0]
    raise DomainError("pass the total mass explicitly for this solution type")


def asymptotics_report(
    sol: SolutionField,
    radii: Sequence[float],
    directions: int = 8,
    spec: QuadratureSpec = DEFAULT_SPEC,
    mass: Optional[float] = None,
) -> AsymptoticsReport:
    """Far-field diagnostics of ``sol`` along a ladder of radii about the origin.

    slope_samples
        Mean over directions of ``-<x, grad U(x)>`` at ``|x| = r``.
    fitted_beta
        Least-squares slope of ``-U`` against ``log r`` over the radii in
        the last decade of the ladder.
    remainder_samples
        Max over directions of ``|x| |grad(U_hat - beta log|x|)|`` at
        ``|x| = 1/r``, with ``U_hat`` the Kelvin transform and
        ``beta = (mass/(n omega_n))^(1/(n-1))``.  ``mass`` defaults to the
        exact mass for family members and to :func:`total_mass` for shot
        profiles.
    gamma_from_flux
        Boundary flux through ``|x| = r``, i.e. the mass inside ``B_r``.
    """
    r = np.asarray(radii, dtype=float)
    if r.ndim != 1 or r.size < 4:
        raise DomainError("asymptotics need at least 4 radii")
    if np.any(r <= 0) or np.any(np.diff(r) <= 0):
        raise DomainError("radii must be positive and strictly increasing")
    n = sol.dim.n
    dirs = sample_directions(n, directions)

    slopes, means = [], []
    for rad in r:
        x = rad * dirs
        slopes.append(float(np.mean(-np.sum(x * sol.gradient(x), axis=-1))))
        means.append(float(np.mean(sol.value(x))))
    top = r >= r[-1] / 10.0
    if np.count_nonzero(top) < 2:
        raise DomainError("need at least two radii in the last decade of the ladder")
    slope, _ = np.polyfit(np.log(r[top]), -np.asarray(means)[top], 1)

    if mass is None:
        mass = _default_mass(sol)
    beta = (mass / (n * sol.dim.omega_n)) ** (1.0 / (n - 1))

    remainders = []
    for rad in r:
        x = dirs / rad
        g = kelvin_gradient(sol, x) - beta * x * rad**2  # grad log|x| = x/|x|^2
        remainders.append(float(np.max(np.linalg.norm(g, axis=-1))) / rad)

    origin = np.zeros(n)
    gammas = [flux_through_sphere(sol, float(rad), origin, spec) for rad in r]
    return AsymptoticsReport(
        radii=tuple(float(v) for v in r),
        slope_samples=tuple(slopes),
        fitted_beta=float(slope),
        beta_n=sol.dim.beta_n,
        beta_from_mass=float(beta),
        remainder_samples=tuple(remainders),
        gamma_from_flux=tuple(float(v) for v in gammas),
    )


# ---------------------------------------------------------------------------
# weighted gradient integrals


def weighted_sobolev_integral(
    sol: SolutionField,
    q: float,
    R: float,
    spec: QuadratureSpec = DEFAULT_SPEC,
    inner: float = 1.0,
) -> float:
    """``int_{B_R \\ B_inner} |grad U|^q / |x|^(2(n-q)) dx`` for a solution radial about 0.

    ``inner`` defaults to 1.  Passing the previous radius of a ladder gives
    shell increments directly, without cancelling two large totals.
    """
    n = sol.dim.n
    if not 1 <= q <= n:
        raise DomainError(f"q must lie in [1, {n}], got {q!r}")
    if not inner >= 1:
        raise DomainError(f"inner radius must be at least 1, got {inner!r}")
    if not R > inner:
        raise DomainError(f"R must exceed {inner!r}, got {R!r}")
    c = sol.radial_center
    if c is None or np.any(np.asarray(c) != 0):
        raise DomainError("weighted integral needs a solution radial about the origin")
    _, du = _radial_functions(sol)
    power = n - 2.0 * (n - q)  # r^(n-1) volume factor times r^(-2(n-q)) times dr = r ds
    nodes = _node_radii(sol)
    s_nodes = None if nodes is None else np.log(nodes[nodes > 0])
    value, _ = interval_integral(
        lambda s: np.exp(power * s) * np.abs(du(np.exp(s))) ** q,
        math.log(inner),
        math.log(R),
        spec,
        s_nodes,
    )
    return sol.dim.sigma * value
