# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled radial flux integrator; mirrors ``_kernels_py.integrate_flux``."""

import numpy as np
cimport numpy as cnp
from libc.math cimport exp, pow, fabs, isfinite

cnp.import_array()

cdef double C2 = 1.0 / 5.0, C3 = 3.0 / 10.0, C4 = 4.0 / 5.0, C5 = 8.0 / 9.0
cdef double A21 = 1.0 / 5.0
cdef double A31 = 3.0 / 40.0, A32 = 9.0 / 40.0
cdef double A41 = 44.0 / 45.0, A42 = -56.0 / 15.0, A43 = 32.0 / 9.0
cdef double A51 = 19372.0 / 6561.0, A52 = -25360.0 / 2187.0, A53 = 64448.0 / 6561.0, A54 = -212.0 / 729.0
cdef double A61 = 9017.0 / 3168.0, A62 = -355.0 / 33.0, A63 = 46732.0 / 5247.0
cdef double A64 = 49.0 / 176.0, A65 = -5103.0 / 18656.0
cdef double B1 = 35.0 / 384.0, B3 = 500.0 / 1113.0, B4 = 125.0 / 192.0
cdef double B5 = -2187.0 / 6784.0, B6 = 11.0 / 84.0
cdef double E1 = 71.0 / 57600.0, E3 = -71.0 / 16695.0, E4 = 71.0 / 1920.0
cdef double E5 = -17253.0 / 339200.0, E6 = 22.0 / 525.0, E7 = -1.0 / 40.0

cdef double SAFETY = 0.9
cdef double FAC_MIN = 0.2
cdef double FAC_MAX = 10.0
cdef double PI_BETA = 0.04
cdef double EXPO1 = 0.25 - 0.04 * 0.75

cdef enum:
    STATUS_OK = 0
    STATUS_UNDERFLOW = 1
    STATUS_NONFINITE = 2
    STATUS_MAXSTEPS = 3


cdef inline void _rhs(double n, double s, double u, double w, double* du, double* dw) nogil:
    cdef double r = exp(s)
    cdef double inv = 1.0 / (n - 1.0)
    du[0] = -r * pow(fabs(w) / pow(r, n - 1.0), inv)
    dw[0] = -pow(r, n) * exp(u)


cdef inline double _fmax(double a, double b) nogil:
    return a if a > b else b


cdef inline double _fmin(double a, double b) nogil:
    return a if a < b else b


def integrate_flux(n_in, double s0, double s1, double u0, double w0,
                   double rtol, double atol, double h0, long max_steps,
                   double h_max):
    cdef double n = <double>n_in
    cdef Py_ssize_t cap = 1024
    cdef Py_ssize_t count = 1
    cdef cnp.ndarray[cnp.float64_t, ndim=1] s_out = np.empty(cap)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] u_out = np.empty(cap)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] w_out = np.empty(cap)
    s_out[0] = s0
    u_out[0] = u0
    w_out[0] = w0

    cdef double s = s0, u = u0, w = w0, h = h0, sn, un, wn
    cdef double cu = 0.0, cw = 0.0, du, dw
    cdef double facold = 1.0e-4, fac, fac11, hnew, err, eu, ew, sku, skw
    cdef bint reject = False, last
    cdef long n_acc = 0, n_rej = 0
    cdef int status = STATUS_OK
    cdef double k1u, k1w, k2u, k2w, k3u, k3w, k4u, k4w, k5u, k5w, k6u, k6w, k7u, k7w

    _rhs(n, s, u, w, &k1u, &k1w)

    while s < s1:
        if n_acc + n_rej >= max_steps:
            status = STATUS_MAXSTEPS
            break
        if h < 1.0e-12 * _fmax(1.0, fabs(s)):
            status = STATUS_UNDERFLOW
            break
        if h > h_max:
            h = h_max
        last = False
        if s + h >= s1:
            h = s1 - s
            last = True

        _rhs(n, s + C2 * h, u + h * (A21 * k1u), w + h * (A21 * k1w), &k2u, &k2w)
        _rhs(n, s + C3 * h, u + h * (A31 * k1u + A32 * k2u),
             w + h * (A31 * k1w + A32 * k2w), &k3u, &k3w)
        _rhs(n, s + C4 * h, u + h * (A41 * k1u + A42 * k2u + A43 * k3u),
             w + h * (A41 * k1w + A42 * k2w + A43 * k3w), &k4u, &k4w)
        _rhs(n, s + C5 * h, u + h * (A51 * k1u + A52 * k2u + A53 * k3u + A54 * k4u),
             w + h * (A51 * k1w + A52 * k2w + A53 * k3w + A54 * k4w), &k5u, &k5w)
        _rhs(n, s + h, u + h * (A61 * k1u + A62 * k2u + A63 * k3u + A64 * k4u + A65 * k5u),
             w + h * (A61 * k1w + A62 * k2w + A63 * k3w + A64 * k4w + A65 * k5w), &k6u, &k6w)
        du = h * (B1 * k1u + B3 * k3u + B4 * k4u + B5 * k5u + B6 * k6u) - cu
        dw = h * (B1 * k1w + B3 * k3w + B4 * k4w + B5 * k5w + B6 * k6w) - cw
        un = u + du
        wn = w + dw
        if last:
            sn = s1
        else:
            sn = s + h
        _rhs(n, sn, un, wn, &k7u, &k7w)

        eu = h * (E1 * k1u + E3 * k3u + E4 * k4u + E5 * k5u + E6 * k6u + E7 * k7u)
        ew = h * (E1 * k1w + E3 * k3w + E4 * k4w + E5 * k5w + E6 * k6w + E7 * k7w)
        if not (isfinite(un) and isfinite(wn) and isfinite(eu) and isfinite(ew)):
            h *= FAC_MIN
            n_rej += 1
            reject = True
            if h < 1.0e-12 * _fmax(1.0, fabs(s)):
                status = STATUS_NONFINITE
                break
            continue
        sku = atol + rtol
        skw = rtol * _fmax(fabs(w), fabs(wn))
        err = _fmax(fabs(eu) / sku, fabs(ew) / skw) / h

        fac11 = pow(err, EXPO1) if err > 0.0 else 0.0
        if err <= 1.0:
            fac = fac11 / pow(facold, PI_BETA)
            fac = _fmax(1.0 / FAC_MAX, _fmin(1.0 / FAC_MIN, fac / SAFETY))
            facold = _fmax(err, 1.0e-4)
            n_acc += 1
            cu = (un - u) - du
            cw = (wn - w) - dw
            s = sn
            u = un
            w = wn
            k1u = k7u
            k1w = k7w
            if count == cap:
                cap *= 2
                s_out = np.resize(s_out, cap)
                u_out = np.resize(u_out, cap)
                w_out = np.resize(w_out, cap)
            s_out[count] = s
            u_out[count] = u
            w_out[count] = w
            count += 1
            hnew = h / fac
            if reject:
                hnew = _fmin(hnew, h)
            reject = False
            h = hnew
        else:
            h = h / _fmin(1.0 / FAC_MIN, fac11 / SAFETY)
            reject = True
            n_rej += 1

    return (s_out[:count].copy(), u_out[:count].copy(), w_out[:count].copy(),
            status, n_acc, n_rej)
