"""Deterministic quadrature: composite Gauss-Legendre panels, sphere rules, balls.

Every rule here is fixed-node and deterministic.  Off-center ball and sphere
integrals are limited to n = 2, 3 where tensor rules are cheap; a radially
symmetric integrand about the ball center is handled in any dimension.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional, Tuple

import numpy as np

from .core import Dimension
from .errors import DomainError, PrecisionError, UnsupportedError

MAX_DOUBLINGS = 20
# evaluation budget per refinement level; keeps a runaway integrand from exhausting memory
MAX_NODES = 1 << 24


@dataclass(frozen=True)
class QuadratureSpec:
    """Resolution and accuracy target shared by every rule in this module.

    ``circle_nodes`` is the trapezoid count on circles (n = 2);
    ``sphere_polar`` x ``sphere_azimuth`` is the Gauss-in-cos(theta) times
    trapezoid-in-phi product rule on spheres (n = 3).
    """

    panel_order: int = 10
    panels: int = 4
    target_rel_err: float = 1e-10
    circle_nodes: int = 256
    sphere_polar: int = 64
    sphere_azimuth: int = 128

    def __post_init__(self):
        if self.panel_order < 2:
            raise DomainError("panel_order must be >= 2")
        if self.panels < 1:
            raise DomainError("panels must be >= 1")
        if not self.target_rel_err > 0:
            raise DomainError("target_rel_err must be positive")
        if min(self.circle_nodes, self.sphere_polar, self.sphere_azimuth) < 1:
            raise DomainError("sphere rule node counts must be positive")


DEFAULT_SPEC = QuadratureSpec()


@lru_cache(maxsize=None)
def _gauss_legendre(order: int) -> Tuple[np.ndarray, np.ndarray]:
    x, w = np.polynomial.legendre.leggauss(order)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def _partition(a: float, b: float, breakpoints) -> np.ndarray:
    edges = [a, b]
    if breakpoints is not None:
        bp = np.asarray(breakpoints, dtype=float).ravel()
        edges.extend(bp[(bp > a) & (bp < b)].tolist())
    return np.unique(np.asarray(edges, dtype=float))


def composite_gauss(f: Callable, edges: np.ndarray, per_piece: int, order: int) -> float:
    """Gauss rule of ``order`` on ``per_piece`` equal panels inside every ``[edges[i], edges[i+1]]``."""
    x, w = _gauss_legendre(order)
    frac = np.linspace(0.0, 1.0, per_piece + 1)
    lo, hi = edges[:-1], edges[1:]
    sub = lo[:, None] + (hi - lo)[:, None] * frac[None, :]
    left, right = sub[:, :-1].ravel(), sub[:, 1:].ravel()
    half = 0.5 * (right - left)
    mid = 0.5 * (right + left)
    nodes = mid[:, None] + half[:, None] * x[None, :]
    vals = np.asarray(f(nodes.ravel()), dtype=float).reshape(nodes.shape)
    if not np.all(np.isfinite(vals)):
        raise DomainError("integrand is not finite on the interval")
    # per-panel sums, then numpy's pairwise reduction in panel order
    return float(np.sum(np.sum(vals * (half[:, None] * w[None, :]), axis=1)))


def radial_integral(
    f: Callable,
    a: float,
    b: float,
    spec: QuadratureSpec = DEFAULT_SPEC,
    breakpoints=None,
) -> Tuple[float, float]:
    """:func:`interval_integral` restricted to radial intervals ``0 <= a < b``."""
    if not (0 <= a < b):
        raise DomainError(f"need 0 <= a < b, got [{a}, {b}]")
    return interval_integral(f, a, b, spec, breakpoints)


def interval_integral(
    f: Callable,
    a: float,
    b: float,
    spec: QuadratureSpec = DEFAULT_SPEC,
    breakpoints=None,
) -> Tuple[float, float]:
    """Composite Gauss-Legendre integral of a vectorized ``f`` over ``[a, b]``.

    The panel count doubles until two successive levels agree to
    ``spec.target_rel_err``.  The returned ``err_est`` is that difference;
    it bounds the error of the coarser level and so overstates the error of
    the returned (finer) value.  Points of ``breakpoints`` inside ``(a, b)``
    stay panel edges at every level, which is how known kinks of ``f`` are
    kept away from Gauss nodes.

    Raises
    ------
    PrecisionError
        No agreement after ``MAX_DOUBLINGS`` doublings.
    """
    if not (math.isfinite(a) and math.isfinite(b) and a < b):
        raise DomainError(f"need finite a < b, got [{a}, {b}]")
    edges = _partition(a, b, breakpoints)
    pieces = len(edges) - 1
    per_piece = spec.panels
    order = spec.panel_order
    prev = composite_gauss(f, edges, per_piece, order)
    err = math.inf
    for _ in range(MAX_DOUBLINGS):
        per_piece *= 2
        if pieces * per_piece * order > MAX_NODES:
            break
        cur = composite_gauss(f, edges, per_piece, order)
        err = abs(cur - prev)
        if err <= spec.target_rel_err * abs(cur):
            return cur, err
        prev = cur
    raise PrecisionError(
        f"integral on [{a}, {b}] did not reach rel. error {spec.target_rel_err:g} "
        f"(last change {err:.3g})"
    )


@lru_cache(maxsize=None)
def _unit_sphere_rule(n: int, circle: int, polar: int, azimuth: int):
    if n == 2:
        theta = 2.0 * math.pi * np.arange(circle) / circle
        dirs = np.stack([np.cos(theta), np.sin(theta)], axis=-1)
        weights = np.full(circle, 2.0 * math.pi / circle)
    elif n == 3:
        mu, wmu = _gauss_legendre(polar)
        phi = 2.0 * math.pi * np.arange(azimuth) / azimuth
        sin_t = np.sqrt(1.0 - mu**2)
        dirs = np.stack(
            [
                (sin_t[:, None] * np.cos(phi)[None, :]).ravel(),
                (sin_t[:, None] * np.sin(phi)[None, :]).ravel(),
                np.repeat(mu, azimuth),
            ],
            axis=-1,
        )
        weights = np.repeat(wmu, azimuth) * (2.0 * math.pi / azimuth)
    else:
        raise UnsupportedError(f"sphere rules exist for n = 2, 3 only, got n = {n}")
    dirs.setflags(write=False)
    weights.setflags(write=False)
    return dirs, weights


def _reflector(axis, n: int) -> Optional[np.ndarray]:
    """Householder matrix sending the last basis vector to ``axis`` (None if already there)."""
    if axis is None:
        return None
    a = np.asarray(axis, dtype=float).reshape(n)
    norm = np.linalg.norm(a)
    if norm == 0:
        return None
    a = a / norm
    v = -a
    v[-1] += 1.0
    vv = float(v @ v)
    if vv < 1e-30:
        return None
    return np.eye(n) - 2.0 * np.outer(v, v) / vv


def unit_sphere_rule(dim: Dimension, spec: QuadratureSpec = DEFAULT_SPEC, axis=None):
    """Directions and weights of the unit-sphere rule; weights sum to ``sigma``.

    ``axis`` orients the rule so that its pole (n = 3) or its last coordinate
    direction (n = 2) points along the given vector.  Integrands with a kink
    in that direction then stay smooth along each rule line.
    """
    dirs, weights = _unit_sphere_rule(
        dim.n, spec.circle_nodes, spec.sphere_polar, spec.sphere_azimuth
    )
    h = _reflector(axis, dim.n)
    if h is not None:
        dirs = dirs @ h.T
    return dirs, weights


def sphere_integral(
    g: Callable,
    R: float,
    y,
    dim: Dimension,
    spec: QuadratureSpec = DEFAULT_SPEC,
    axis=None,
) -> float:
    """Surface integral of ``g(points, normals)`` over the sphere ``|x - y| = R``."""
    if not R > 0:
        raise DomainError(f"radius must be positive, got {R!r}")
    dirs, weights = unit_sphere_rule(dim, spec, axis)
    y = np.asarray(y, dtype=float).reshape(dim.n)
    vals = np.asarray(g(y + R * dirs, dirs), dtype=float)
    return float(np.sum(vals * weights)) * R ** (dim.n - 1)


def ball_integral(
    g: Callable,
    R: float,
    y,
    dim: Dimension,
    spec: QuadratureSpec = DEFAULT_SPEC,
    radial: bool = False,
    axis=None,
    breakpoints=None,
) -> float:
    """Volume integral of ``g(points)`` over ``B_R(y)`` by radial shells.

    Parameters
    ----------
    radial : bool
        Assert that ``g`` depends only on ``|x - y|``.  Each shell is then
        sampled at a single point and any dimension is accepted.
    axis, breakpoints
        Orientation of the shell rule and shell radii where the shell
        average may have a kink.  Used for integrands that are singular at a
        known point off the center.
    """
    if not R > 0:
        raise DomainError(f"radius must be positive, got {R!r}")
    n = dim.n
    y = np.asarray(y, dtype=float).reshape(n)
    if radial:
        e1 = np.zeros(n)
        e1[0] = 1.0

        def shell(rho):
            return dim.sigma * rho ** (n - 1) * np.asarray(g(y + rho[:, None] * e1), dtype=float)

    else:
        if n not in (2, 3):
            raise UnsupportedError(
                f"off-center ball integrals need n in (2, 3), got n = {n}; "
                "pass radial=True for integrands symmetric about the center"
            )
        dirs, weights = unit_sphere_rule(dim, spec, axis)

        def shell(rho):
            pts = y + rho[:, None, None] * dirs[None, :, :]
            vals = np.asarray(g(pts), dtype=float)
            return rho ** (n - 1) * np.sum(vals * weights, axis=-1)

    value, _ = radial_integral(shell, 0.0, R, spec, breakpoints)
    return value


def _shell_fraction_area(r, d: float, R: float, n: int):
    """Area of ``{|x - p| = r}`` inside ``B_R(y)`` for ``|y - p| = d`` and r in the partial range."""
    c = np.clip((r * r + d * d - R * R) / (2.0 * r * d), -1.0, 1.0)
    if n == 2:
        return 2.0 * r * np.arccos(c)
    return 2.0 * math.pi * r * r * (1.0 - c)


def offset_radial_ball_integral(
    h: Callable,
    R: float,
    y,
    p,
    dim: Dimension,
    spec: QuadratureSpec = DEFAULT_SPEC,
    breakpoints=None,
) -> float:
    """``int_{B_R(y)} h(|x - p|) dx`` for an integrand radial about a point ``p``.

    Shells about ``p`` lying wholly inside the ball contribute
    ``sigma r^(n-1) h(r)``.  Shells cut by the boundary contribute the area of
    the enclosed arc (n = 2) or cap (n = 3).  On the cut range
    ``r = a + (b - a)(1 - cos tau)/2`` removes the square-root behaviour of
    that area at both ends.  ``breakpoints`` are radii about ``p`` where
    ``h`` may have a kink.
    """
    if not R > 0:
        raise DomainError(f"radius must be positive, got {R!r}")
    n = dim.n
    y = np.asarray(y, dtype=float).reshape(n)
    p = np.asarray(p, dtype=float).reshape(n)
    d = float(np.linalg.norm(y - p))
    bp = None if breakpoints is None else np.asarray(breakpoints, dtype=float).ravel()

    def full(r):
        return dim.sigma * r ** (n - 1) * h(r)

    if d == 0.0:
        return interval_integral(full, 0.0, R, spec, bp)[0]
    if n not in (2, 3):
        raise UnsupportedError(f"off-center ball integrals need n in (2, 3), got n = {n}")
    value = 0.0
    if R > d:
        value += interval_integral(full, 0.0, R - d, spec, bp)[0]
    a, b = abs(R - d), R + d
    half = 0.5 * (b - a)

    def cut(tau):
        r = a + half * (1.0 - np.cos(tau))
        safe = np.where(r > 0, r, 1.0)
        return np.where(r > 0, _shell_fraction_area(safe, d, R, n) * h(safe), 0.0) * half * np.sin(tau)

    tau_bp = None
    if bp is not None:
        inside = bp[(bp > a) & (bp < b)]
        tau_bp = np.arccos(1.0 - (inside - a) / half)
    value += interval_integral(cut, 0.0, math.pi, spec, tau_bp)[0]
    return value


# dyadic panels toward the pole resolve |theta|^a behaviour of a point singularity there
POLE_GRADING_LEVELS = 48


def axisymmetric_sphere_integral(
    g: Callable,
    R: float,
    y,
    axis,
    dim: Dimension,
    spec: QuadratureSpec = DEFAULT_SPEC,
) -> float:
    """Surface integral of ``g(points, normals)`` over ``|x - y| = R`` for an axisymmetric ``g``.

    ``g`` must be invariant under rotations about the line through ``y``
    along ``axis``; the integral then reduces to the polar angle ``theta``
    measured from ``axis``.  Panels are graded geometrically toward
    ``theta = 0`` so a singular point on the axis costs only a few
    panels per decade.
    """
    if not R > 0:
        raise DomainError(f"radius must be positive, got {R!r}")
    n = dim.n
    if n not in (2, 3):
        raise UnsupportedError(f"axisymmetric sphere integrals need n in (2, 3), got n = {n}")
    y = np.asarray(y, dtype=float).reshape(n)
    e_axis = np.asarray(axis, dtype=float).reshape(n)
    e_axis = e_axis / np.linalg.norm(e_axis)
    # any unit vector orthogonal to the axis
    trial = np.eye(n)[int(np.argmin(np.abs(e_axis)))]
    e_perp = trial - (trial @ e_axis) * e_axis
    e_perp /= np.linalg.norm(e_perp)

    def ring(theta):
        nu = np.cos(theta)[:, None] * e_axis + np.sin(theta)[:, None] * e_perp
        vals = np.asarray(g(y + R * nu, nu), dtype=float)
        # circle: two mirror arcs; sphere: circles of radius R sin(theta)
        weight = 2.0 if n == 2 else 2.0 * math.pi * np.sin(theta)
        return vals * weight * R ** (n - 1)

    grading = math.pi * 0.5 ** np.arange(1, POLE_GRADING_LEVELS + 1)
    return interval_integral(ring, 0.0, math.pi, spec, grading)[0]
