"""Radial shooting for ``-Delta_n U = e^U`` from a regular center.

Radial solutions satisfy ``-(r^(n-1) |U'|^(n-2) U')' = r^(n-1) e^U``.  With the
flux ``w = r^(n-1) |U'|^(n-2) U'`` this is the first-order system

    U' = -(|w| / r^(n-1))^(1/(n-1)),    w' = -r^(n-1) e^U,

integrated in ``s = log r`` by the kernel in :mod:`nliouville.kernels`.  The
mass inside ``B_r`` is ``-sigma * w(r)`` by the divergence theorem.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from scipy.interpolate import BPoly

from . import kernels
from .core import Dimension, _as_points
from .errors import DomainError, IntegrationError, TailDivergenceError

DEFAULT_R0 = 1.0e-6
DEFAULT_RTOL = 1.0e-10
DEFAULT_ATOL = 1.0e-12
MAX_STEPS = 2_000_000
# largest step in log r; bounds the interpolation error between nodes
DEFAULT_MAX_STEP = 0.05
TAIL_SAMPLES = 64


def _series_coef(alpha: float, dim: Dimension) -> float:
    n = dim.n
    return ((n - 1) / n) * (math.exp(alpha) / n) ** (1.0 / (n - 1))


def _series_profile(alpha: float, r, dim: Dimension):
    return alpha - _series_coef(alpha, dim) * r**dim.m


def _series_flux(alpha: float, r, dim: Dimension):
    # w = -int_0^r s^(n-1) e^U with e^U ~ e^alpha (1 - coef s^m); keeping the
    # second term leaves a relative error of order r^(2m)
    n, m = dim.n, dim.m
    return -math.exp(alpha) * r**n / n * (1.0 - n * _series_coef(alpha, dim) * r**m / (n + m))


def series_start(alpha: float, r0: float, dim: Dimension) -> Tuple[float, float]:
    """Series values of ``(U, w)`` at ``r0`` for center value ``alpha``."""
    if not r0 > 0:
        raise DomainError(f"start radius must be positive, got {r0!r}")
    return _series_profile(alpha, r0, dim), _series_flux(alpha, r0, dim)


def default_start_radius(alpha: float, dim: Dimension, atol: float) -> float:
    # squared leading correction must stay below atol
    coef = (math.exp(alpha) / dim.n) ** (1.0 / (dim.n - 1))
    return min(DEFAULT_R0, (math.sqrt(atol) / coef) ** (1.0 / dim.m))


def _quintic_hermite(x, y, dy, d2y) -> BPoly:
    """Piecewise quintic matching values, slopes and curvatures at the nodes."""
    h = np.diff(x)
    c = np.empty((6, h.size))
    c[0] = y[:-1]
    c[1] = y[:-1] + h * dy[:-1] / 5.0
    c[2] = y[:-1] + 2.0 * h * dy[:-1] / 5.0 + h * h * d2y[:-1] / 20.0
    c[3] = y[1:] - 2.0 * h * dy[1:] / 5.0 + h * h * d2y[1:] / 20.0
    c[4] = y[1:] - h * dy[1:] / 5.0
    c[5] = y[1:]
    return BPoly(c, x)


@dataclass(frozen=True, eq=False)
class RadialSolution:
    """Numerically integrated radial profile.

    Nodes are the accepted steps of the integrator.  Between nodes ``U`` and
    ``w`` are quintic Hermite interpolants in ``log r``; the first and second
    derivatives at each node come from the differential equation itself.
    """

    dim: Dimension
    alpha: float
    grid: np.ndarray
    u_values: np.ndarray
    flux: np.ndarray
    r_max: float
    rtol: float
    atol: float
    center: np.ndarray
    n_rejected: int = 0

    def __post_init__(self):
        n = self.dim.n
        s = np.log(self.grid)
        aw = np.abs(self.flux)
        # in s = log r:  U_s = -|w|^(1/(n-1)),  w_s = -e^(n s + U)
        u_s = -(aw ** (1.0 / (n - 1)))
        w_s = -np.exp(n * s + self.u_values)
        u_ss = aw ** ((2.0 - n) / (n - 1)) * w_s / (n - 1)
        w_ss = w_s * (n + u_s)
        object.__setattr__(self, "_u_spline", _quintic_hermite(s, self.u_values, u_s, u_ss))
        object.__setattr__(self, "_w_spline", _quintic_hermite(s, self.flux, w_s, w_ss))
        for arr in (self.grid, self.u_values, self.flux, self.center):
            arr.setflags(write=False)

    @property
    def r0(self) -> float:
        return float(self.grid[0])

    @property
    def du_dr(self) -> np.ndarray:
        n = self.dim.n
        return -((np.abs(self.flux) / self.grid ** (n - 1)) ** (1.0 / (n - 1)))

    @property
    def radial_center(self) -> np.ndarray:
        return self.center

    @property
    def lam(self) -> float:
        """Scale of the family member with the same center value."""
        return (math.exp(self.alpha) / self.dim.c_n) ** (1.0 / self.dim.n)

    @property
    def t0(self) -> float:
        return self.alpha

    def _check_range(self, r: np.ndarray) -> None:
        if np.any(r < 0) or np.any(r > self.r_max * (1 + 1e-12)):
            raise DomainError(f"radius outside [0, {self.r_max}]")

    def profile(self, r):
        r = np.asarray(r, dtype=float)
        self._check_range(r)
        inner = r < self.r0
        s = np.log(np.clip(r, self.r0, self.grid[-1]))
        out = self._u_spline(s)
        if np.any(inner):
            out = np.where(inner, _series_profile(self.alpha, r, self.dim), out)
        return out

    def flux_at(self, r):
        r = np.asarray(r, dtype=float)
        self._check_range(r)
        inner = r < self.r0
        s = np.log(np.clip(r, self.r0, self.grid[-1]))
        out = self._w_spline(s)
        if np.any(inner):
            out = np.where(inner, _series_flux(self.alpha, r, self.dim), out)
        return out

    def profile_derivative(self, r):
        """``U'(r)`` recovered from the interpolated flux."""
        n = self.dim.n
        r = np.asarray(r, dtype=float)
        w = self.flux_at(r)
        safe = np.where(r > 0, r, 1.0)
        out = -((np.abs(w) / safe ** (n - 1)) ** (1.0 / (n - 1)))
        return np.where(r > 0, out, 0.0)

    def value(self, x):
        x = _as_points(x, self.dim.n)
        return self.profile(np.linalg.norm(x - self.center, axis=-1))

    def gradient(self, x):
        x = _as_points(x, self.dim.n)
        d = x - self.center
        r = np.linalg.norm(d, axis=-1)
        du = self.profile_derivative(r)
        safe = np.where(r > 0, r, 1.0)
        return (du / safe)[..., None] * d


def integrate_radial(
    alpha: float,
    r_max: float,
    dim: Dimension,
    rtol: float = DEFAULT_RTOL,
    atol: float = DEFAULT_ATOL,
    r0: Optional[float] = None,
    center=None,
    backend: Optional[str] = None,
    max_step: float = DEFAULT_MAX_STEP,
) -> RadialSolution:
    """Shoot the radial problem from center value ``alpha`` out to ``r_max``.

    ``max_step`` caps the step in ``log r``.

    Raises
    ------
    IntegrationError
        Step size underflow or a non-finite state; carries the last good radius.
    """
    if not (0 < rtol < 1e-2 and 0 < atol < 1e-2):
        raise DomainError("tolerances must lie in (0, 1e-2)")
    if not max_step > 0:
        raise DomainError(f"max_step must be positive, got {max_step!r}")
    if not math.isfinite(alpha):
        raise DomainError(f"center value must be finite, got {alpha!r}")
    if r0 is None:
        r0 = default_start_radius(alpha, dim, atol)
    if not r_max > r0:
        raise DomainError(f"r_max must exceed the start radius {r0:g}")
    u0, w0 = series_start(alpha, r0, dim)
    integrate = kernels.get_integrator(backend)
    s, u, w, status, _, n_rej = integrate(
        dim.n, math.log(r0), math.log(r_max), u0, w0, rtol, atol, min(0.1 * rtol**0.25, max_step), MAX_STEPS, max_step
    )
    if status != kernels.STATUS_OK:
        reason = {
            kernels.STATUS_UNDERFLOW: "step size underflow",
            kernels.STATUS_NONFINITE: "non-finite state",
            kernels.STATUS_MAXSTEPS: "step budget exhausted",
        }[status]
        raise IntegrationError(reason, float(np.exp(s[-1])))
    grid = np.exp(s)
    grid[-1] = r_max
    if center is None:
        center = np.zeros(dim.n)
    center = np.array(center, dtype=float).reshape(dim.n)
    return RadialSolution(
        dim=dim,
        alpha=float(alpha),
        grid=grid,
        u_values=u,
        flux=w,
        r_max=float(r_max),
        rtol=rtol,
        atol=atol,
        center=center,
        n_rejected=n_rej,
    )


def mass_in_ball(sol: RadialSolution, R: float) -> float:
    """``int_{B_R} e^U = -sigma * w(R)``."""
    if not 0 < R <= sol.r_max * (1 + 1e-12):
        raise DomainError(f"R must lie in (0, {sol.r_max}], got {R!r}")
    return float(-sol.dim.sigma * sol.flux_at(R))


def fit_log_tail(sol, r_lo: float, r_hi: float, samples: int = TAIL_SAMPLES) -> Tuple[float, float]:
    """Least-squares fit ``U ~ -beta log r + C`` on ``[r_lo, r_hi]``; returns ``(beta, C)``."""
    r = np.geomspace(r_lo, r_hi, samples)
    slope, intercept = np.polyfit(np.log(r), sol.profile(r), 1)
    return float(-slope), float(intercept)


def fit_corrected_tail(sol, r_lo: float, r_hi: float, samples: int = TAIL_SAMPLES):
    """Least-squares fit ``U ~ -beta log r + C + D r^(-m)``; returns ``(beta, C, D)``.

    ``r^(-m)`` is the first correction to the logarithmic decay of a regular
    radial solution, so this fit removes the dominant bias of :func:`fit_log_tail`.
    """
    r = np.geomspace(r_lo, r_hi, samples)
    basis = np.stack([np.ones_like(r), -np.log(r), r ** (-sol.dim.m)], axis=1)
    (c, beta, d), *_ = np.linalg.lstsq(basis, sol.profile(r), rcond=None)
    return float(beta), float(c), float(d)


def total_mass(sol: RadialSolution) -> Tuple[float, float]:
    """Mass in ``B_{r_max}`` plus the analytic tail of the fitted asymptote.

    The tail integrates ``e^C r^(-beta) (1 + D r^(-m))`` from ``r_max`` to
    infinity, with the coefficients from :func:`fit_corrected_tail` over the
    last decade.  Returns ``(mass, tail_estimate)``; ``mass`` includes the tail.
    """
    n, m = sol.dim.n, sol.dim.m
    r_lo = sol.r_max / 10.0
    if r_lo < sol.r0:
        raise DomainError("profile too short for a one-decade tail fit")
    beta, c, d = fit_corrected_tail(sol, r_lo, sol.r_max)
    if beta <= n:
        raise TailDivergenceError(
            f"fitted decay {beta:.6g} <= n = {n}: tail not integrable at this range", beta
        )
    R = sol.r_max
    tail = sol.dim.sigma * math.exp(c) * (
        R ** (n - beta) / (beta - n) + d * R ** (n - beta - m) / (beta + m - n)
    )
    return mass_in_ball(sol, R) + tail, tail


PROFILE_COLUMNS = ("r", "U", "dU_dr", "flux", "mass_in_ball")


def profile_rows(sol: RadialSolution):
    """Rows for the profile dump, one per grid node."""
    mass = -sol.dim.sigma * sol.flux
    return [
        (float(r), float(u), float(du), float(w), float(m))
        for r, u, du, w, m in zip(sol.grid, sol.u_values, sol.du_dr, sol.flux, mass)
    ]
