"""Numerical certification toolkit for the n-Laplace Liouville equation.

The explicit family, radial shooting, quadrature, integral identities and
level-set diagnostics are re-exported here.  Report plumbing and the CLI
live in :mod:`nliouville.reports` and :mod:`nliouville.cli`.
"""

from .core import (
    MAX_DIMENSION,
    Dimension,
    ExactSolution,
    SolutionField,
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
from .errors import (
    DomainError,
    EmptySetError,
    IntegrationError,
    LiouvilleError,
    NumericError,
    PrecisionError,
    TailDivergenceError,
    UnsupportedError,
)
from .identities import (
    AsymptoticsReport,
    PohozaevReport,
    asymptotics_report,
    flux_through_sphere,
    limit_mass_equation,
    limit_mass_root,
    mass_flux_identity,
    pohozaev_residual,
    pohozaev_shift_gap,
    weighted_sobolev_integral,
)
from .kernels import BACKEND
from .level_sets import (
    LevelSetSample,
    coarea_derivative,
    isoperimetric_chain,
    level_set_samples,
    mass_ode_check,
    recombination_gaps,
    superlevel_mass,
    superlevel_radius,
    superlevel_volume,
)
from .quadrature import (
    DEFAULT_SPEC,
    QuadratureSpec,
    ball_integral,
    interval_integral,
    radial_integral,
    sphere_integral,
)
from .radial import RadialSolution, integrate_radial, mass_in_ball, total_mass

__all__ = [
    "AsymptoticsReport",
    "BACKEND",
    "DEFAULT_SPEC",
    "Dimension",
    "DomainError",
    "EmptySetError",
    "ExactSolution",
    "IntegrationError",
    "LevelSetSample",
    "LiouvilleError",
    "MAX_DIMENSION",
    "NumericError",
    "PohozaevReport",
    "PrecisionError",
    "QuadratureSpec",
    "RadialSolution",
    "SolutionField",
    "TailDivergenceError",
    "UnsupportedError",
    "asymptotics_report",
    "ball_integral",
    "coarea_derivative",
    "dimension_constants",
    "eval_grad",
    "eval_u",
    "exact_mass",
    "family_member",
    "flux_through_sphere",
    "integrate_radial",
    "interval_integral",
    "isoperimetric_chain",
    "kelvin_eval",
    "kelvin_gradient",
    "kelvin_value",
    "lambda_from_alpha",
    "level_set_samples",
    "limit_mass_equation",
    "limit_mass_root",
    "mass_flux_identity",
    "mass_in_ball",
    "mass_ode_check",
    "pohozaev_residual",
    "pohozaev_shift_gap",
    "radial_integral",
    "recombination_gaps",
    "sphere_integral",
    "superlevel_mass",
    "superlevel_radius",
    "superlevel_volume",
    "total_mass",
    "weighted_sobolev_integral",
]
__version__ = "0.1.0"
