"""Backend selection for the radial flux integrator.

The compiled extension is used when it imports; setting the environment
variable ``NLIOUVILLE_PURE_PYTHON=1`` forces the pure-Python twin.
"""

import os

from . import _kernels_py

STATUS_OK = _kernels_py.STATUS_OK
STATUS_UNDERFLOW = _kernels_py.STATUS_UNDERFLOW
STATUS_NONFINITE = _kernels_py.STATUS_NONFINITE
STATUS_MAXSTEPS = _kernels_py.STATUS_MAXSTEPS

BACKENDS = {"python": _kernels_py.integrate_flux}

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None
else:
    BACKENDS["cython"] = _compiled.integrate_flux

if os.environ.get("NLIOUVILLE_PURE_PYTHON", "") not in ("", "0") or _compiled is None:
    BACKEND = "python"
else:
    BACKEND = "cython"

integrate_flux = BACKENDS[BACKEND]


def get_integrator(name=None):
    """Return the integrator for ``name`` (``None`` means the active backend)."""
    if name is None:
        return integrate_flux
    try:
        return BACKENDS[name]
    except KeyError:
        raise ValueError(f"backend {name!r} unavailable; have {sorted(BACKENDS)}") from None
