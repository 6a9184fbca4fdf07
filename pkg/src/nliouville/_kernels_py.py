"""Pure-Python radial flux integrator; reference twin of ``_kernels.pyx``.

Both backends perform the same floating-point operations in the same order,
so they agree to the last bit on IEEE hardware.  Keep them in lockstep.
"""

import math

import numpy as np

# Dormand-Prince 5(4) tableau
C2, C3, C4, C5 = 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0
A21 = 1.0 / 5.0
A31, A32 = 3.0 / 40.0, 9.0 / 40.0
A41, A42, A43 = 44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0
A51, A52, A53, A54 = 19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0
A61, A62, A63, A64, A65 = (
    9017.0 / 3168.0,
    -355.0 / 33.0,
    46732.0 / 5247.0,
    49.0 / 176.0,
    -5103.0 / 18656.0,
)
B1, B3, B4, B5, B6 = 35.0 / 384.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0
E1, E3, E4, E5, E6, E7 = (
    71.0 / 57600.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
)

SAFETY = 0.9
FAC_MIN = 0.2
FAC_MAX = 10.0
PI_BETA = 0.04
EXPO1 = 0.25 - PI_BETA * 0.75

STATUS_OK = 0
STATUS_UNDERFLOW = 1
STATUS_NONFINITE = 2
STATUS_MAXSTEPS = 3


def _rhs(n, s, u, w):
    # state (U, w) in the log radius s = log r
    r = math.exp(s)
    inv = 1.0 / (n - 1.0)
    du = -r * math.pow(math.fabs(w) / math.pow(r, n - 1.0), inv)
    dw = -math.pow(r, n) * math.exp(u)
    return du, dw


def integrate_flux(n, s0, s1, u0, w0, rtol, atol, h0, max_steps, h_max):
    """Integrate ``U' = -(|w|/r^(n-1))^(1/(n-1))``, ``w' = -r^(n-1) e^U`` in ``s = log r``.

    Steps never exceed ``h_max``.  Returns ``(s, u, w, status, n_accepted,
    n_rejected)``; the arrays hold every accepted node including the start.
    """
    n = float(n)
    cap = 1024
    s_out = np.empty(cap)
    u_out = np.empty(cap)
    w_out = np.empty(cap)
    s_out[0], u_out[0], w_out[0] = s0, u0, w0
    count = 1

    s, u, w = s0, u0, w0
    h = h0
    cu = 0.0
    cw = 0.0
    facold = 1.0e-4
    reject = False
    n_acc = 0
    n_rej = 0
    status = STATUS_OK
    k1u, k1w = _rhs(n, s, u, w)

    while s < s1:
        if n_acc + n_rej >= max_steps:
            status = STATUS_MAXSTEPS
            break
        if h < 1.0e-12 * max(1.0, math.fabs(s)):
            status = STATUS_UNDERFLOW
            break
        if h > h_max:
            h = h_max
        last = False
        if s + h >= s1:
            h = s1 - s
            last = True

        k2u, k2w = _rhs(n, s + C2 * h, u + h * (A21 * k1u), w + h * (A21 * k1w))
        k3u, k3w = _rhs(
            n, s + C3 * h, u + h * (A31 * k1u + A32 * k2u), w + h * (A31 * k1w + A32 * k2w)
        )
        k4u, k4w = _rhs(
            n,
            s + C4 * h,
            u + h * (A41 * k1u + A42 * k2u + A43 * k3u),
            w + h * (A41 * k1w + A42 * k2w + A43 * k3w),
        )
        k5u, k5w = _rhs(
            n,
            s + C5 * h,
            u + h * (A51 * k1u + A52 * k2u + A53 * k3u + A54 * k4u),
            w + h * (A51 * k1w + A52 * k2w + A53 * k3w + A54 * k4w),
        )
        k6u, k6w = _rhs(
            n,
            s + h,
            u + h * (A61 * k1u + A62 * k2u + A63 * k3u + A64 * k4u + A65 * k5u),
            w + h * (A61 * k1w + A62 * k2w + A63 * k3w + A64 * k4w + A65 * k5w),
        )
        # compensated (Kahan) state update keeps roundoff from accumulating
        du = h * (B1 * k1u + B3 * k3u + B4 * k4u + B5 * k5u + B6 * k6u) - cu
        dw = h * (B1 * k1w + B3 * k3w + B4 * k4w + B5 * k5w + B6 * k6w) - cw
        un = u + du
        wn = w + dw
        if last:
            sn = s1
        else:
            sn = s + h
        k7u, k7w = _rhs(n, sn, un, wn)

        eu = h * (E1 * k1u + E3 * k3u + E4 * k4u + E5 * k5u + E6 * k6u + E7 * k7u)
        ew = h * (E1 * k1w + E3 * k3w + E4 * k4w + E5 * k5w + E6 * k6w + E7 * k7w)
        if not (math.isfinite(un) and math.isfinite(wn) and math.isfinite(eu) and math.isfinite(ew)):
            # shrink and retry; a persistent blow-up ends in underflow
            h *= FAC_MIN
            n_rej += 1
            reject = True
            if h < 1.0e-12 * max(1.0, math.fabs(s)):
                status = STATUS_NONFINITE
                break
            continue
        # U is a logarithm: its absolute error is the relative error of e^U;
        # the flux spans many decades and is controlled relatively
        sku = atol + rtol
        skw = rtol * max(math.fabs(w), math.fabs(wn))
        # error per unit step in s: global error scales like tol^(5/4)
        err = max(math.fabs(eu) / sku, math.fabs(ew) / skw) / h

        fac11 = math.pow(err, EXPO1) if err > 0.0 else 0.0
        if err <= 1.0:
            # PI controller (Gustafsson)
            fac = fac11 / math.pow(facold, PI_BETA)
            fac = max(1.0 / FAC_MAX, min(1.0 / FAC_MIN, fac / SAFETY))
            facold = max(err, 1.0e-4)
            n_acc += 1
            cu = (un - u) - du
            cw = (wn - w) - dw
            s, u, w = sn, un, wn
            k1u, k1w = k7u, k7w
            if count == cap:
                cap *= 2
                s_out = np.resize(s_out, cap)
                u_out = np.resize(u_out, cap)
                w_out = np.resize(w_out, cap)
            s_out[count], u_out[count], w_out[count] = s, u, w
            count += 1
            hnew = h / fac
            if reject:
                hnew = min(hnew, h)
            reject = False
            h = hnew
        else:
            h = h / min(1.0 / FAC_MIN, fac11 / SAFETY)
            reject = True
            n_rej += 1

    return s_out[:count].copy(), u_out[:count].copy(), w_out[:count].copy(), status, n_acc, n_rej
