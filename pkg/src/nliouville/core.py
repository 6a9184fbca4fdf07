"""Dimensional constants, the explicit solution family and the Kelvin transform.

The explicit solutions of ``-div(|grad U|^(n-2) grad U) = exp(U)`` on R^n are

    U_{lam,p}(x) = log( c_n lam^n / (1 + (lam |x - p|)^(n/(n-1)))^n )

with ``c_n = n (n^2/(n-1))^(n-1)``.  Every consumer downstream talks to a
solution through the small :class:`SolutionField` protocol, so exact and
numerically integrated profiles are interchangeable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional, Protocol, Tuple, runtime_checkable

import numpy as np
from scipy.special import gammaln

from .errors import DomainError

MAX_DIMENSION = 16


@dataclass(frozen=True)
class Dimension:
    """All constants that depend on the space dimension only.

    Attributes
    ----------
    n : int
        Space dimension (2 <= n <= 16).
    c_n : float
        Liouville constant ``n (n^2/(n-1))^(n-1)``.
    omega_n : float
        Volume of the unit ball.
    sigma : float
        Surface measure of the unit sphere, ``n * omega_n``.
    beta_n : float
        Far-field log slope ``n^2/(n-1)``.
    mass_quantum : float
        ``c_n * omega_n``, the total mass of every family member.
    """

    n: int
    c_n: float
    omega_n: float
    sigma: float
    beta_n: float
    mass_quantum: float

    @property
    def m(self) -> float:
        """Exponent ``n/(n-1)`` of the profile."""
        return self.n / (self.n - 1)

    @property
    def beta_from_constant(self) -> float:
        """``(c_n/n)^(1/(n-1))``; equals ``beta_n`` by algebra."""
        return (self.c_n / self.n) ** (1.0 / (self.n - 1))


@lru_cache(maxsize=None)
def dimension_constants(n: int) -> Dimension:
    if isinstance(n, bool) or int(n) != n:
        raise DomainError(f"dimension must be an integer, got {n!r}")
    n = int(n)
    if n < 2:
        raise DomainError(f"dimension must satisfy n >= 2, got {n}")
    if n > MAX_DIMENSION:
        raise DomainError(f"dimension capped at {MAX_DIMENSION}, got {n}")
    beta = n * n / (n - 1)
    c_n = n * beta ** (n - 1)
    # log-Gamma keeps large n away from overflow
    omega = math.exp(0.5 * n * math.log(math.pi) - gammaln(0.5 * n + 1.0))
    return Dimension(
        n=n,
        c_n=c_n,
        omega_n=omega,
        sigma=n * omega,
        beta_n=beta,
        mass_quantum=c_n * omega,
    )


@runtime_checkable
class SolutionField(Protocol):
    """What every solution object exposes.

    ``value`` and ``gradient`` accept a single point of shape ``(n,)`` or a
    batch of shape ``(..., n)``.
    """

    dim: Dimension

    def value(self, x) -> np.ndarray: ...

    def gradient(self, x) -> np.ndarray: ...

    @property
    def radial_center(self) -> Optional[np.ndarray]: ...


def _as_points(x, n: int) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.shape[-1:] != (n,):
        raise DomainError(f"expected points with trailing dimension {n}, got shape {x.shape}")
    return x


@dataclass(frozen=True)
class ExactSolution:
    """Family member ``U_{lam,p}``; ``t0 = log(c_n lam^n)`` is its maximum."""

    dim: Dimension
    lam: float
    p: Tuple[float, ...]
    _p: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not (self.lam > 0 and math.isfinite(self.lam)):
            raise DomainError(f"scale must be a positive finite number, got {self.lam!r}")
        p = np.array(self.p, dtype=float).reshape(-1)
        if p.shape != (self.dim.n,):
            raise DomainError(f"center must have {self.dim.n} coordinates, got {p.shape}")
        object.__setattr__(self, "p", tuple(float(v) for v in p))
        p.setflags(write=False)
        object.__setattr__(self, "_p", p)

    @property
    def t0(self) -> float:
        return math.log(self.dim.c_n) + self.dim.n * math.log(self.lam)

    @property
    def alpha(self) -> float:
        """Center value, identical to ``t0``."""
        return self.t0

    @property
    def radial_center(self) -> np.ndarray:
        return self._p

    def profile(self, r):
        """U as a function of the distance to the center."""
        n, m = self.dim.n, self.dim.m
        r = np.asarray(r, dtype=float)
        return self.t0 - n * np.log1p((self.lam * r) ** m)

    def profile_derivative(self, r):
        """dU/dr as a function of the distance to the center."""
        n, m = self.dim.n, self.dim.m
        r = np.asarray(r, dtype=float)
        lr_m = (self.lam * r) ** m
        with np.errstate(divide="ignore", invalid="ignore"):
            out = -n * m * lr_m / (r * (1.0 + lr_m))
        return np.where(r > 0, out, 0.0)

    def value(self, x):
        x = _as_points(x, self.dim.n)
        r = np.linalg.norm(x - self._p, axis=-1)
        return self.profile(r)

    def gradient(self, x):
        n, m = self.dim.n, self.dim.m
        x = _as_points(x, n)
        d = x - self._p
        r = np.linalg.norm(d, axis=-1)
        lam_m = self.lam**m
        safe_r = np.where(r > 0, r, 1.0)
        coef = -n * m * lam_m * safe_r ** (m - 2.0) / (1.0 + lam_m * safe_r**m)
        # continuous extension: |x-p|^(m-1) -> 0 at the center
        coef = np.where(r > 0, coef, 0.0)
        return coef[..., None] * d


def family_member(dim: Dimension, lam: float, p=None) -> ExactSolution:
    if not lam > 0:
        raise DomainError(f"scale must be positive, got {lam!r}")
    if p is None:
        p = np.zeros(dim.n)
    return ExactSolution(dim, float(lam), tuple(np.asarray(p, dtype=float).reshape(-1)))


def lambda_from_alpha(dim: Dimension, alpha: float) -> float:
    """Scale of the family member whose center value is ``alpha``."""
    return (math.exp(alpha) / dim.c_n) ** (1.0 / dim.n)


def eval_u(sol: ExactSolution, x) -> float:
    return float(sol.value(x))


def eval_grad(sol: ExactSolution, x) -> np.ndarray:
    return sol.gradient(x)


def exact_mass(sol: ExactSolution) -> float:
    # scale and translation invariant
    return sol.dim.mass_quantum


def _inversion(x: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    r2 = np.sum(x * x, axis=-1)
    if np.any(r2 == 0):
        raise DomainError("Kelvin transform undefined at the origin")
    return x / r2[..., None], r2


def kelvin_gradient(sol: SolutionField, x) -> np.ndarray:
    """Gradient of ``U(x/|x|^2)`` by the chain rule through the inversion."""
    x = _as_points(x, sol.dim.n)
    y, r2 = _inversion(x)
    g = sol.gradient(y)
    # Jacobian of x -> x/|x|^2 is (I - 2 x x^T/|x|^2)/|x|^2 (symmetric)
    xg = np.sum(x * g, axis=-1)
    return (g - 2.0 * (xg / r2)[..., None] * x) / r2[..., None]


def kelvin_value(sol: SolutionField, x):
    x = _as_points(x, sol.dim.n)
    y, _ = _inversion(x)
    return sol.value(y)


def kelvin_eval(sol: SolutionField, x) -> Tuple[float, float]:
    """Value and gradient magnitude of the Kelvin transform at ``x != 0``."""
    x = _as_points(x, sol.dim.n)
    value = kelvin_value(sol, x)
    grad = kelvin_gradient(sol, x)
    return float(value), float(np.linalg.norm(grad))
