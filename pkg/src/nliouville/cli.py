"""``nliouville`` command line: run verification suites and write reports.

Exit status: 0 when every check passes, 1 when any check fails, 2 on a
usage error, 3 when an output file cannot be written.
"""

from __future__ import annotations

import argparse
import math
import sys
import time
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
from scipy.stats import qmc

from . import identities as ident
from . import level_sets as ls
from .core import (
    MAX_DIMENSION,
    dimension_constants,
    eval_u,
    exact_mass,
    family_member,
    kelvin_eval,
    lambda_from_alpha,
)
from .errors import DomainError, LiouvilleError
from .radial import (
    DEFAULT_RTOL,
    PROFILE_COLUMNS,
    integrate_radial,
    mass_in_ball,
    profile_rows,
    total_mass,
)
from .reports import Check, ReportIOError, VerificationReport, failed_check, render, table_csv, write_text

# tolerance ladder
TOL_CLOSED = 1e-8  # closed form against closed form or converged quadrature
TOL_NUMERIC = 1e-6  # quadrature and ODE results
TOL_TAIL = 1e-4  # tail extrapolation, asymptotic fits, derivatives of interpolants
TOL_LOG_SLOPE = 2e-2
TOL_SHIFT = 1e-10

# outer radius of shot profiles when --rmax is absent; asymptotic checks need the long range
RMAX_DEFAULTS = {"shoot": 50.0, "sweep": 1e3, "verify": 1e6}

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3

VERIFY_TARGETS = ("pohozaev", "mass", "levelsets", "asymptotics", "sobolev", "limit-mass", "all")
ALL_ORDER = ("pohozaev", "mass", "levelsets", "asymptotics", "sobolev", "limit-mass")


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# parsing


def _positive(text: str) -> float:
    v = float(text)
    if not (v > 0 and math.isfinite(v)):
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text!r}")
    return v


def _dimension(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"dimension must be an integer, got {text!r}")
    if not 2 <= n <= MAX_DIMENSION:
        raise argparse.ArgumentTypeError(f"dimension must lie in [2, {MAX_DIMENSION}], got {n}")
    return n


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=_dimension, default=2, help="space dimension (default 2)")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--out", metavar="PATH", help="report destination (default stdout)")
    common.add_argument(
        "--timing", action="store_true", help="record wall time in timing_ms (breaks byte-identity)"
    )

    solution = argparse.ArgumentParser(add_help=False)
    solution.add_argument("--lambda", dest="lam", type=_positive, default=1.0, help="family scale")
    solution.add_argument("--alpha", type=float, help="center value; overrides --lambda")
    solution.add_argument("--rmax", type=_positive, help="outer radius of the shot profile")
    solution.add_argument("--rtol", type=_positive, default=DEFAULT_RTOL)

    parser = argparse.ArgumentParser(
        prog="nliouville",
        description="Verify the explicit solutions of -Delta_n U = exp(U) and their integral identities.",
    )
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    sub.add_parser("constants", parents=[common], help="dimensional constants")
    sub.add_parser("exact", parents=[common, solution], help="checks on one family member")

    shoot = sub.add_parser("shoot", parents=[common, solution], help="shoot a radial profile")
    shoot.add_argument("--profile-out", metavar="PATH", help="CSV dump of the shot profile")

    verify = sub.add_parser("verify", parents=[common, solution], help="identity suites")
    verify.add_argument("target", choices=VERIFY_TARGETS)
    verify.add_argument(
        "--source",
        choices=("exact", "shot"),
        default="exact",
        help="verify the closed-form family member or a shot profile",
    )
    verify.add_argument("--R", dest="radii", type=_positive, nargs="+", help="ball radii")
    verify.add_argument("--center", type=float, nargs="+", help="ball center y (default origin)")
    verify.add_argument("--levels-out", metavar="PATH", help="CSV dump of the level-set samples")

    sweep = sub.add_parser("sweep", parents=[common, solution], help="shoot over a parameter grid")
    grid = sweep.add_mutually_exclusive_group()
    grid.add_argument("--lambdas", type=_positive, nargs="+")
    grid.add_argument("--alphas", type=float, nargs="+")
    return parser


def parse_command(argv: Optional[Sequence[str]] = None) -> argparse.Namespace:
    return build_parser().parse_args(argv)


# ---------------------------------------------------------------------------
# check plumbing


def _run(checks: List[Check], name: str, tol: float, fn: Callable[[], Tuple[float, float, float]]) -> None:
    """Append one check; numeric failures become failed records."""
    try:
        lhs, rhs, residual = fn()
        checks.append(Check(name, float(lhs), float(rhs), float(residual), tol))
    except (LiouvilleError, ArithmeticError, ValueError) as exc:
        checks.append(failed_check(name, tol, exc))


def _rel(a: float, b: float) -> float:
    return abs(a - b) / (1.0 + abs(b))


def _worst(values, key):
    best = max(values, key=key)
    return best, key(best)


def _alpha(args, dim) -> float:
    if args.alpha is not None:
        return float(args.alpha)
    return math.log(dim.c_n) + dim.n * math.log(args.lam)


def _count_false(flags) -> int:
    return int(np.count_nonzero(~np.asarray(flags, dtype=bool)))


# ---------------------------------------------------------------------------
# suites


def suite_constants(args, dim) -> List[Check]:
    checks: List[Check] = []
    n = dim.n
    _run(checks, "dimension_constants.beta_n", TOL_CLOSED,
         lambda: (dim.beta_from_constant, dim.beta_n, _rel(dim.beta_from_constant, dim.beta_n)))

    def omega_recurrence():
        # |B_1| in R^n from omega_0 = 1, omega_1 = 2, omega_k = 2 pi omega_{k-2} / k
        w = [1.0, 2.0]
        for k in range(2, n + 1):
            w.append(2.0 * math.pi * w[k - 2] / k)
        return dim.omega_n, w[n], _rel(dim.omega_n, w[n])

    _run(checks, "dimension_constants.omega_n", TOL_CLOSED, omega_recurrence)
    _run(checks, "dimension_constants.sigma", TOL_CLOSED,
         lambda: (dim.sigma, n * dim.omega_n, _rel(dim.sigma, n * dim.omega_n)))
    _run(checks, "dimension_constants.mass_quantum", TOL_CLOSED,
         lambda: (dim.mass_quantum, dim.c_n * dim.omega_n, _rel(dim.mass_quantum, dim.c_n * dim.omega_n)))
    return checks


def _sample_points(n: int, count: int = 64, box: float = 2.0) -> np.ndarray:
    pts = qmc.Halton(d=n, scramble=False).random(count + 1)[1:]
    return box * (2.0 * pts - 1.0)


def suite_exact(args, dim) -> List[Check]:
    checks: List[Check] = []
    n = dim.n
    lam = lambda_from_alpha(dim, args.alpha) if args.alpha is not None else args.lam
    sol = family_member(dim, lam)
    pts = _sample_points(n)

    _run(checks, "eval_u.peak", TOL_CLOSED,
         lambda: (eval_u(sol, np.zeros(n)), sol.t0, _rel(eval_u(sol, np.zeros(n)), sol.t0)))

    def fd_gradient():
        g = sol.gradient(pts)
        fd = np.empty_like(g)
        for k in range(n):
            e = np.zeros(n)
            h = 1e-6 * (1.0 + np.linalg.norm(pts, axis=-1))
            e[k] = 1.0
            fd[:, k] = (sol.value(pts + h[:, None] * e) - sol.value(pts - h[:, None] * e)) / (2 * h)
        err = np.linalg.norm(g - fd, axis=-1) / (1.0 + np.linalg.norm(g, axis=-1))
        i = int(np.argmax(err))
        return np.linalg.norm(g[i]), np.linalg.norm(fd[i]), err[i]

    _run(checks, "eval_grad.finite_difference", TOL_NUMERIC, fd_gradient)

    def covariance():
        unit = family_member(dim, 1.0)
        lhs = sol.value(pts)
        rhs = unit.value(lam * pts) + n * math.log(lam)
        err = np.abs(lhs - rhs)
        i = int(np.argmax(err))
        return lhs[i], rhs[i], err[i]

    _run(checks, "family_member.covariance", TOL_CLOSED, covariance)

    def kelvin():
        worst = (0.0, 0.0, -1.0)
        for x in pts:
            if not np.any(x):
                continue
            _, gk = kelvin_eval(sol, x)
            r2 = float(x @ x)
            ref = float(np.linalg.norm(sol.gradient(x / r2)))
            err = abs(gk * r2 - ref) / (1.0 + ref)
            if err > worst[2]:
                worst = (gk * r2, ref, err)
        return worst

    _run(checks, "kelvin_eval.chain_rule", TOL_CLOSED, kelvin)

    def mass_quadrature():
        q = dim.sigma * ident.shell_integral(sol, lambda r: r ** (n - 1) * np.exp(sol.profile(r)), 1e8 / lam)
        return q, exact_mass(sol), _rel(q, exact_mass(sol))

    _run(checks, "exact_mass.quadrature", TOL_CLOSED, mass_quadrature)
    return checks


def _shoot(args, dim, rmax_default: float):
    rmax = args.rmax if args.rmax is not None else rmax_default
    return integrate_radial(_alpha(args, dim), rmax, dim, rtol=args.rtol)


def _shot_checks(checks: List[Check], sol, dim, tag: str = "", sup_radius: Optional[float] = None) -> None:
    ref = family_member(dim, sol.lam)

    def sup_error():
        mask = sol.grid <= (sup_radius if sup_radius is not None else sol.r_max)
        err = np.abs(sol.u_values[mask] - ref.profile(sol.grid[mask]))
        return float(np.max(err)), 0.0, float(np.max(err))

    _run(checks, f"integrate_radial.sup_error{tag}", TOL_NUMERIC, sup_error)

    def monotone():
        bad = _count_false(np.diff(sol.u_values) < 0) + _count_false(np.diff(sol.flux) < 0)
        return bad, 0, bad

    _run(checks, f"integrate_radial.monotone{tag}", 0.0, monotone)

    def flux_balance():
        n = dim.n
        q = ident.shell_integral(sol, lambda r: r ** (n - 1) * np.exp(sol.profile(r)), sol.r_max)
        w = float(sol.flux[-1])
        return -w, q, abs(w + q) / abs(w)

    _run(checks, f"integrate_radial.flux_consistency{tag}", TOL_NUMERIC, flux_balance)

    def mass():
        m, _ = total_mass(sol)
        return m, dim.mass_quantum, abs(m - dim.mass_quantum) / dim.mass_quantum

    _run(checks, f"total_mass{tag}", TOL_TAIL, mass)


def suite_shoot(args, dim):
    checks: List[Check] = []
    try:
        sol = _shoot(args, dim, RMAX_DEFAULTS["shoot"])
    except LiouvilleError as exc:
        checks.append(failed_check("integrate_radial", TOL_NUMERIC, exc))
        return checks, None
    _shot_checks(checks, sol, dim)
    return checks, sol


def suite_sweep(args, dim) -> List[Check]:
    checks: List[Check] = []
    rmax = args.rmax if args.rmax is not None else RMAX_DEFAULTS["sweep"]
    if args.alphas:
        alphas = list(args.alphas)
    else:
        lams = args.lambdas or [0.5, 1.0, 2.0]
        alphas = [math.log(dim.c_n) + dim.n * math.log(l) for l in lams]
    for a in alphas:
        tag = f"[alpha={a:.17g}]"
        try:
            sol = integrate_radial(a, rmax, dim, rtol=args.rtol)
        except LiouvilleError as exc:
            checks.append(failed_check(f"integrate_radial{tag}", TOL_NUMERIC, exc))
            continue
        _shot_checks(checks, sol, dim, tag, sup_radius=min(50.0, rmax))
    return checks


# --- verify -----------------------------------------------------------------


class _Context:
    def __init__(self, args, dim):
        self.args = args
        self.dim = dim
        self.exact = args.source == "exact"
        self.center = np.zeros(dim.n) if args.center is None else np.asarray(args.center, dtype=float)
        if self.center.shape != (dim.n,):
            raise UsageError(f"--center needs {dim.n} coordinates")
        if self.exact:
            lam = lambda_from_alpha(dim, args.alpha) if args.alpha is not None else args.lam
            self.sol = family_member(dim, lam)
        else:
            self.sol = _shoot(args, dim, RMAX_DEFAULTS["verify"])
        self.lam = self.sol.lam
        self.level_samples = None

    @property
    def centered(self) -> bool:
        return not np.any(self.center)


def verify_pohozaev(ctx: _Context) -> List[Check]:
    checks: List[Check] = []
    radii = ctx.args.radii or [0.1, 1.0, 10.0]
    tol = TOL_CLOSED if (ctx.exact and ctx.centered) else TOL_NUMERIC
    for R in radii:
        tag = f"[R={R:.17g}]"
        holder = {}

        def main():
            a, b, gap = ident.pohozaev_shift_gap(ctx.sol, ctx.center, R)
            holder["shift"] = (b.residual, a.residual, gap)
            return a.lhs, a.rhs, a.rel_residual

        _run(checks, f"pohozaev_residual{tag}", tol, main)
        if "shift" in holder:
            _run(checks, f"pohozaev_residual.shift{tag}", TOL_SHIFT, lambda: holder["shift"])
    return checks


def verify_mass(ctx: _Context) -> List[Check]:
    checks: List[Check] = []
    radii = ctx.args.radii or [0.1, 1.0, 10.0]
    tol = TOL_CLOSED if (ctx.exact and ctx.centered) else TOL_NUMERIC
    dim = ctx.dim
    for R in radii:
        tag = f"[R={R:.17g}]"
        _run(checks, f"mass_flux_identity{tag}", tol, lambda: ident.mass_flux_identity(ctx.sol, ctx.center, R))
        if ctx.centered:

            def ball():
                lr = (ctx.lam * R) ** dim.m
                closed = dim.mass_quantum * (lr / (1.0 + lr)) ** (dim.n - 1)
                if ctx.exact:
                    got = ident.mass_flux_identity(ctx.sol, ctx.center, R)[0]
                else:
                    got = mass_in_ball(ctx.sol, R)
                return got, closed, _rel(got, closed)

            _run(checks, f"mass_in_ball{tag}", tol, ball)
    if not ctx.exact:

        def mass():
            m, _ = total_mass(ctx.sol)
            return m, dim.mass_quantum, abs(m - dim.mass_quantum) / dim.mass_quantum

        _run(checks, "total_mass", TOL_TAIL, mass)
    return checks


def verify_levelsets(ctx: _Context) -> List[Check]:
    checks: List[Check] = []
    sol = ctx.sol
    closed_tol = TOL_CLOSED if ctx.exact else TOL_NUMERIC
    chain_tol = TOL_NUMERIC if ctx.exact else TOL_TAIL
    try:
        samples = ls.level_set_samples(sol)
    except LiouvilleError as exc:
        checks.append(failed_check("level_set_samples", closed_tol, exc))
        return checks
    ctx.level_samples = samples

    def worst(attr_fn, lhs_fn, rhs_fn):
        s, v = _worst(samples, attr_fn)
        return lhs_fn(s), rhs_fn(s), v

    _run(checks, "perimeter_gradient_integral", closed_tol,
         lambda: worst(lambda s: s.perimeter_gap, lambda s: s.perimeter_grad, lambda s: s.mass))
    _run(checks, "superlevel_mass.closed_form", closed_tol,
         lambda: worst(lambda s: s.mass_gap, lambda s: s.mass, lambda s: s.mass_closed_form))
    _run(checks, "superlevel_radius.closed_form", closed_tol,
         lambda: worst(lambda s: _rel(s.radius, s.radius_closed_form),
                       lambda s: s.radius, lambda s: s.radius_closed_form))

    def ode():
        best = None
        for s in samples:
            lhs, rhs, res = ls.mass_ode_check(sol, s.t)
            if best is None or res > best[2]:
                best = (lhs, rhs, res)
        return best

    _run(checks, "mass_ode_check", TOL_NUMERIC, ode)
    _run(checks, "recombination.volume_gradient", closed_tol,
         lambda: worst(lambda s: s.recombination_gaps[0], lambda s: s.mass, lambda s: s.mass))
    _run(checks, "recombination.mass_power", closed_tol,
         lambda: worst(lambda s: s.recombination_gaps[1], lambda s: s.mass, lambda s: s.mass))

    def coarea():
        best = None
        for s in samples:
            h = 1e-4 * (1.0 + abs(s.t))
            a, fd = ls.coarea_derivative(sol, s.t, h)
            res = abs(a - fd) / (1.0 + abs(a))
            if best is None or res > best[2]:
                best = (a, fd, res)
        return best

    _run(checks, "coarea_derivative", TOL_NUMERIC if ctx.exact else TOL_TAIL, coarea)
    _run(checks, "isoperimetric_chain.equality", chain_tol,
         lambda: worst(lambda s: ls.chain_spread(s.chain), lambda s: s.chain[0], lambda s: s.chain[3]))

    def ordering(s):
        d1, d2, d3, d4 = s.chain
        return max(0.0, d3 - d2, d4 - d3, abs(d1 - d2)) / d2

    _run(checks, "isoperimetric_chain.ordering", chain_tol,
         lambda: worst(ordering, lambda s: s.chain[1], lambda s: s.chain[3]))
    return checks


def _ladder_top(ctx: _Context) -> float:
    # far-field corrections decay like r^(-n/(n-1)); push the ladder until they are ~1e-8
    top = 10.0 ** (3 * (ctx.dim.n - 1)) / ctx.lam
    if not ctx.exact:
        top = min(top, ctx.sol.r_max)
    return top


def verify_asymptotics(ctx: _Context) -> List[Check]:
    checks: List[Check] = []
    dim = ctx.dim
    top = _ladder_top(ctx)
    bottom = 1.0 / ctx.lam
    decades = max(1, int(round(math.log10(top / bottom))))
    radii = np.geomspace(bottom, top, 5 * decades + 1)
    try:
        rep = ident.asymptotics_report(ctx.sol, radii)
    except LiouvilleError as exc:
        checks.append(failed_check("asymptotics_report", TOL_TAIL, exc))
        return checks
    s_last = rep.slope_samples[-1]
    _run(checks, "asymptotics_report.slope_limit", TOL_TAIL,
         lambda: (s_last, dim.beta_n, abs(s_last - dim.beta_n) / dim.beta_n))
    _run(checks, "asymptotics_report.fitted_beta", TOL_TAIL,
         lambda: (rep.fitted_beta, dim.beta_n, abs(rep.fitted_beta - dim.beta_n) / dim.beta_n))

    def strictly(values, decreasing):
        d = np.diff(values)
        bad = _count_false(d < 0 if decreasing else d > 0)
        return bad, 0, bad

    _run(checks, "asymptotics_report.slope_increasing", 0.0, lambda: strictly(rep.slope_samples, False))
    _run(checks, "asymptotics_report.remainder_decreasing", 0.0, lambda: strictly(rep.remainder_samples, True))
    _run(checks, "asymptotics_report.gamma_increasing", 0.0, lambda: strictly(rep.gamma_from_flux, False))

    def beta_from_flux():
        b = (rep.gamma_from_flux[-1] / dim.sigma) ** (1.0 / (dim.n - 1))
        return b, dim.beta_n, abs(b - dim.beta_n) / dim.beta_n

    _run(checks, "asymptotics_report.beta_from_flux", TOL_TAIL, beta_from_flux)
    return checks


def verify_sobolev(ctx: _Context) -> List[Check]:
    checks: List[Check] = []
    dim = ctx.dim
    n = dim.n
    sol = ctx.sol
    if ctx.exact:
        r_hi = 1e8 / ctx.lam

        def cauchy():
            a = ident.weighted_sobolev_integral(sol, 1.0, r_hi)
            b = ident.weighted_sobolev_integral(sol, 1.0, r_hi / 10.0)
            return a, b, _rel(a, b)

        _run(checks, "weighted_sobolev_integral.cauchy[q=1]", TOL_TAIL, cauchy)
        if n == 2:

            def limit():
                # int_1^inf 8 pi lam^2 / (1 + lam^2 r^2) dr; equals 2 pi^2 at lam = 1
                a = ident.weighted_sobolev_integral(sol, 1.0, r_hi)
                target = 8.0 * math.pi * ctx.lam * math.atan2(1.0, ctx.lam)
                return a, target, abs(a - target) / target

            _run(checks, "weighted_sobolev_integral.limit[q=1]", TOL_TAIL, limit)
        r1, r2 = 1e4 / ctx.lam, 1e6 / ctx.lam
    else:
        r2 = sol.r_max
        r1 = r2 / 100.0

        def increments():
            ladder = [R for R in r2 / 2.0 ** np.arange(6)[::-1] if R > 1]
            inc = np.array([
                ident.weighted_sobolev_integral(sol, 1.0, b, inner=a) for a, b in zip(ladder, ladder[1:])
            ])
            bad = _count_false(np.diff(inc) < 0) + _count_false(inc > 0)
            return bad, 0, bad

        _run(checks, "weighted_sobolev_integral.increments[q=1]", 0.0, increments)

    def log_slope():
        a = ident.weighted_sobolev_integral(sol, float(n), r2)
        b = ident.weighted_sobolev_integral(sol, float(n), r1)
        slope = (a - b) / math.log(r2 / r1)
        target = dim.sigma * dim.beta_n**n
        return slope, target, abs(slope - target) / target

    _run(checks, f"weighted_sobolev_integral.log_slope[q={n}]", TOL_LOG_SLOPE, log_slope)
    return checks


def verify_limit_mass(ctx_or_dim) -> List[Check]:
    dim = ctx_or_dim.dim if isinstance(ctx_or_dim, _Context) else ctx_or_dim
    checks: List[Check] = []

    def root():
        g = ident.limit_mass_root(dim)
        return g, dim.mass_quantum, abs(g - dim.mass_quantum) / dim.mass_quantum

    _run(checks, "limit_mass_root", TOL_CLOSED, root)
    return checks


VERIFIERS = {
    "pohozaev": verify_pohozaev,
    "mass": verify_mass,
    "levelsets": verify_levelsets,
    "asymptotics": verify_asymptotics,
    "sobolev": verify_sobolev,
    "limit-mass": verify_limit_mass,
}


def suite_verify(args, dim):
    if args.target == "limit-mass":
        return verify_limit_mass(dim), None
    try:
        ctx = _Context(args, dim)
    except LiouvilleError as exc:
        return [failed_check("integrate_radial", TOL_NUMERIC, exc)], None
    targets = ALL_ORDER if args.target == "all" else (args.target,)
    checks: List[Check] = []
    for t in targets:
        checks.extend(VERIFIERS[t](ctx))
    return checks, ctx


# ---------------------------------------------------------------------------
# report assembly


def _inputs(args, dim) -> Tuple[Tuple[str, object], ...]:
    items: List[Tuple[str, object]] = [("n", dim.n)]
    cmd = args.command
    if cmd == "verify":
        items += [("target", args.target), ("source", args.source)]
    if cmd in ("exact", "shoot", "verify", "sweep"):
        if cmd == "sweep" and (args.alphas or args.lambdas):
            if args.alphas:
                items.append(("alphas", [float(a) for a in args.alphas]))
            else:
                items.append(("lambdas", [float(a) for a in args.lambdas]))
        elif args.alpha is not None:
            items.append(("alpha", float(args.alpha)))
        else:
            items.append(("lambda", float(args.lam)))
    if cmd in ("shoot", "sweep") or (cmd == "verify" and args.source == "shot"):
        default = RMAX_DEFAULTS[cmd]
        items.append(("rmax", float(args.rmax if args.rmax is not None else default)))
        items.append(("rtol", float(args.rtol)))
    if cmd == "verify":
        if args.radii:
            items.append(("R", [float(r) for r in args.radii]))
        if args.center is not None:
            items.append(("center", [float(c) for c in args.center]))
    return tuple(items)


def run_suite(args) -> Tuple[VerificationReport, List[Tuple[str, str]]]:
    """Execute a parsed command; returns the report and any ``(path, text)`` dumps."""
    start = time.perf_counter()
    dim = dimension_constants(args.n)
    dumps: List[Tuple[str, str]] = []
    cmd = args.command
    if cmd == "constants":
        checks = suite_constants(args, dim)
    elif cmd == "exact":
        checks = suite_exact(args, dim)
    elif cmd == "shoot":
        checks, sol = suite_shoot(args, dim)
        if args.profile_out and sol is not None:
            dumps.append((args.profile_out, table_csv(PROFILE_COLUMNS, profile_rows(sol))))
    elif cmd == "verify":
        checks, ctx = suite_verify(args, dim)
        if args.levels_out and ctx is not None:
            if ctx.level_samples is None:
                try:
                    ctx.level_samples = ls.level_set_samples(ctx.sol)
                except LiouvilleError as exc:
                    checks.append(failed_check("level_set_samples", TOL_CLOSED, exc))
            if ctx.level_samples is not None:
                dumps.append((args.levels_out, table_csv(ls.LEVEL_COLUMNS, [s.row() for s in ctx.level_samples])))
    elif cmd == "sweep":
        checks = suite_sweep(args, dim)
    else:  # pragma: no cover - argparse rejects unknown commands
        raise UsageError(f"unknown command {cmd!r}")
    elapsed = int(round(1000 * (time.perf_counter() - start))) if args.timing else 0
    report = VerificationReport(
        command=cmd if cmd != "verify" else f"verify {args.target}",
        n=dim.n,
        inputs=_inputs(args, dim),
        checks=tuple(checks),
        timing_ms=elapsed,
    )
    return report, dumps


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = parse_command(argv)
    except SystemExit as exc:  # argparse usage errors and --help
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        report, dumps = run_suite(args)
    except (UsageError, DomainError) as exc:
        print(f"nliouville: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        for path, text in dumps:
            write_text(text, path)
        write_text(render(report, args.format), args.out)
    except ReportIOError as exc:
        print(f"nliouville: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK if report.ok else EXIT_FAIL


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
