# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: closed-form exponential powers, currents, streamline stepping.

Same API and formulas as ``_kernels_py``.
"""
from libc.math cimport exp, sinh, sqrt, hypot, fabs

import numpy as np

cdef double SINHC_SWITCH = 1e-4
cdef double HEXP_SWITCH = 1e-2

cdef enum:
    C_RULE_CLAMPED = 0
    C_EXIT = 0
    C_MAX_STEPS = 1
    C_STAGNATION = 2

RULE_CLAMPED = 0
RULE_TWO_TIER = 1

EXIT = C_EXIT
MAX_STEPS = C_MAX_STEPS
STAGNATION = C_STAGNATION


cdef inline double _sinhc(double t) noexcept nogil:
    cdef double t2
    if fabs(t) < SINHC_SWITCH:
        t2 = t * t
        return 1.0 + t2 / 6.0 + t2 * t2 / 120.0 + t2 * t2 * t2 / 5040.0
    return sinh(t) / t


cdef inline double _hexp(double t) noexcept nogil:
    if fabs(t) < HEXP_SWITCH:
        return 1.0 + t * (1.0 / 3 + t * (1.0 / 6 + t * (1.0 / 30 + t * (1.0 / 120 + t * (1.0 / 840 + t / 5040.0)))))
    return (t * exp(t) - sinh(t)) / (t * t)


cdef inline void _power(int m, bint coeff_i, double s1, double s2, double x1, double x2,
                        double* re, double* im) noexcept nogil:
    cdef double u = s1 * x1
    cdef double v = s2 * x2
    cdef double ss
    if m == 0:
        if coeff_i:
            re[0] = 0.0
            im[0] = exp(u - v)
        else:
            re[0] = exp(v - u)
            im[0] = 0.0
    elif m == 1:
        if coeff_i:
            re[0] = -exp(v) * x1 * _sinhc(u)
            im[0] = exp(u) * x2 * _sinhc(v)
        else:
            re[0] = exp(-u) * x2 * _sinhc(v)
            im[0] = exp(-v) * x1 * _sinhc(u)
    else:
        ss = 2.0 * x1 * x2 * _sinhc(u) * _sinhc(v)
        if coeff_i:
            re[0] = -ss
            im[0] = -(exp(-v) * x1 * x1 * _hexp(u) - exp(u) * x2 * x2 * _hexp(-v))
        else:
            re[0] = -exp(v) * x1 * x1 * _hexp(-u) + exp(-u) * x2 * x2 * _hexp(v)
            im[0] = ss


def closed_form_power(int m, bint coeff_i, double s1, double s2, x1, x2):
    if m < 0 or m > 2:
        raise ValueError(f"closed forms exist for m in (0, 1, 2), got {m}")
    b1, b2 = np.broadcast_arrays(np.asarray(x1, dtype=float), np.asarray(x2, dtype=float))
    shape = b1.shape
    cdef double[::1] a1 = np.ascontiguousarray(b1).ravel()
    cdef double[::1] a2 = np.ascontiguousarray(b2).ravel()
    cdef Py_ssize_t n = a1.shape[0], k
    out = np.empty(n, dtype=complex)
    cdef double complex[::1] o = out
    cdef double re, im
    with nogil:
        for k in range(n):
            _power(m, coeff_i, s1, s2, a1[k], a2[k], &re, &im)
            o[k] = re + 1j * im
    return out.reshape(shape)


def exp_current(int m, bint coeff_i, double s1, double s2, double s3, x1, x2, x3):
    if m < 0 or m > 2:
        raise ValueError(f"closed forms exist for m in (0, 1, 2), got {m}")
    b1, b2, b3 = np.broadcast_arrays(np.asarray(x1, dtype=float), np.asarray(x2, dtype=float),
                                     np.asarray(x3, dtype=float))
    shape = b1.shape
    cdef double[::1] a1 = np.ascontiguousarray(b1).ravel()
    cdef double[::1] a2 = np.ascontiguousarray(b2).ravel()
    cdef double[::1] a3 = np.ascontiguousarray(b3).ravel()
    cdef Py_ssize_t n = a1.shape[0], k
    j1 = np.empty(n)
    j2 = np.empty(n)
    cdef double[::1] o1 = j1
    cdef double[::1] o2 = j2
    cdef double re, im, scale
    with nogil:
        for k in range(n):
            _power(m, coeff_i, s1, s2, a1[k], a2[k], &re, &im)
            scale = exp(s1 * a1[k] + s2 * a2[k] + 2.0 * s3 * a3[k])
            o1[k] = scale * re
            o2[k] = scale * im
    return j1.reshape(shape), j2.reshape(shape)


def trace(int m, bint coeff_i, double s1, double s2, double x1, double x2, double sign,
          int rule, double step_len, double r_min, double r_max, double sigma_ref,
          double frac_high, double frac_low, long max_steps, double stagnation):
    if m < 0 or m > 2:
        raise ValueError(f"closed forms exist for m in (0, 1, 2), got {m}")
    buf = np.empty((max_steps + 1, 2))
    cdef double[:, ::1] pts = buf
    cdef long n = 1, it
    cdef int reason = C_MAX_STEPS
    cdef double re, im, j1, j2, nj, sig, step, frac, n1, n2, scale
    cdef double d1, d2, a, b, c, t, disc, ratio
    pts[0, 0] = x1
    pts[0, 1] = x2
    with nogil:
        for it in range(max_steps):
            _power(m, coeff_i, s1, s2, x1, x2, &re, &im)
            scale = exp(s1 * x1 + s2 * x2)
            j1 = sign * scale * re
            j2 = sign * scale * im
            nj = hypot(j1, j2)
            if nj < stagnation:
                reason = C_STAGNATION
                break
            sig = exp(2.0 * (s1 * x1 + s2 * x2))
            if rule == C_RULE_CLAMPED:
                ratio = sigma_ref / sig
                if ratio < r_min:
                    ratio = r_min
                elif ratio > r_max:
                    ratio = r_max
                step = step_len * ratio
                n1 = x1 + step * j1 / nj
                n2 = x2 + step * j2 / nj
            else:
                frac = frac_high if sig >= sigma_ref else frac_low
                n1 = x1 + frac * j1
                n2 = x2 + frac * j2
            if n1 * n1 + n2 * n2 > 1.0:
                d1 = n1 - x1
                d2 = n2 - x2
                a = d1 * d1 + d2 * d2
                b = 2.0 * (x1 * d1 + x2 * d2)
                c = x1 * x1 + x2 * x2 - 1.0
                disc = b * b - 4.0 * a * c
                if disc < 0.0:
                    disc = 0.0
                t = (-b + sqrt(disc)) / (2.0 * a)
                if t < 0.0:
                    t = 0.0
                elif t > 1.0:
                    t = 1.0
                pts[n, 0] = x1 + t * d1
                pts[n, 1] = x2 + t * d2
                n += 1
                reason = C_EXIT
                break
            pts[n, 0] = n1
            pts[n, 1] = n2
            n += 1
            x1 = n1
            x2 = n2
    return buf[:n].copy(), reason
