"""Pure-Python implementation of the hot kernels.

Mirrors ``_kernels.pyx`` function for function; used when the compiled
extension is unavailable or ``VEKUA_OHM_PURE=1`` is set.

The exponential model uses u = sigma1*x1 and v = sigma2*x2 throughout.
The degree-2 powers are written in the cancellation-free form

    Z2(1) = -e^v x1^2 H(-u) + e^-u x2^2 H(v) + 2i x1 x2 S(u) S(v)
    Z2(i) = -2 x1 x2 S(u) S(v) - i (e^-v x1^2 H(u) - e^u x2^2 H(-v))

with S(t) = sinh(t)/t and H(t) = (t e^t - sinh t)/t^2, which is what the
textbook expressions reduce to once the 1/sigma^2 terms are collected.
"""
import math

import numpy as np

from .special import HEXP_SWITCH, SINHC_SWITCH, hexp, sinhc

RULE_CLAMPED = 0
RULE_TWO_TIER = 1

EXIT = 0
MAX_STEPS = 1
STAGNATION = 2


def closed_form_power(m, coeff_i, s1, s2, x1, x2):
    """Exponential-case formal power Z^(m)(1 or i, 0; zeta) on arrays."""
    x1 = np.asarray(x1, dtype=float)
    x2 = np.asarray(x2, dtype=float)
    u = s1 * x1
    v = s2 * x2
    if m == 0:
        if coeff_i:
            return 1j * np.exp(u - v)
        return np.exp(-u + v) + 0j
    if m == 1:
        if coeff_i:
            return -np.exp(v) * x1 * sinhc(u) + 1j * np.exp(u) * x2 * sinhc(v)
        return np.exp(-u) * x2 * sinhc(v) + 1j * np.exp(-v) * x1 * sinhc(u)
    if m == 2:
        ss = 2.0 * x1 * x2 * sinhc(u) * sinhc(v)
        if coeff_i:
            return -ss - 1j * (np.exp(-v) * x1 * x1 * hexp(u) - np.exp(u) * x2 * x2 * hexp(-v))
        return -np.exp(v) * x1 * x1 * hexp(-u) + np.exp(-u) * x2 * x2 * hexp(v) + 1j * ss
    raise ValueError(f"closed forms exist for m in (0, 1, 2), got {m}")


def exp_current(m, coeff_i, s1, s2, s3, x1, x2, x3):
    """Current density (j1, j2) of Z^(m) for sigma = exp(2 s.x); j3 is identically 0."""
    z = closed_form_power(m, coeff_i, s1, s2, x1, x2)
    scale = np.exp(s1 * np.asarray(x1) + s2 * np.asarray(x2) + 2.0 * s3 * np.asarray(x3))
    return scale * z.real, scale * z.imag


def _sinhc(t):
    if abs(t) < SINHC_SWITCH:
        t2 = t * t
        return 1.0 + t2 / 6.0 + t2 * t2 / 120.0 + t2 * t2 * t2 / 5040.0
    return math.sinh(t) / t


def _hexp(t):
    if abs(t) < HEXP_SWITCH:
        return 1.0 + t * (1 / 3 + t * (1 / 6 + t * (1 / 30 + t * (1 / 120 + t * (1 / 840 + t / 5040)))))
    return (t * math.exp(t) - math.sinh(t)) / (t * t)


def _current_scalar(m, coeff_i, s1, s2, x1, x2):
    u = s1 * x1
    v = s2 * x2
    if m == 0:
        re, im = (0.0, math.exp(u - v)) if coeff_i else (math.exp(v - u), 0.0)
    elif m == 1:
        if coeff_i:
            re = -math.exp(v) * x1 * _sinhc(u)
            im = math.exp(u) * x2 * _sinhc(v)
        else:
            re = math.exp(-u) * x2 * _sinhc(v)
            im = math.exp(-v) * x1 * _sinhc(u)
    else:
        ss = 2.0 * x1 * x2 * _sinhc(u) * _sinhc(v)
        if coeff_i:
            re = -ss
            im = -(math.exp(-v) * x1 * x1 * _hexp(u) - math.exp(u) * x2 * x2 * _hexp(-v))
        else:
            re = -math.exp(v) * x1 * x1 * _hexp(-u) + math.exp(-u) * x2 * x2 * _hexp(v)
            im = ss
    scale = math.exp(u + v)
    return scale * re, scale * im


def _clip_to_circle(p1, p2, q1, q2):
    d1 = q1 - p1
    d2 = q2 - p2
    a = d1 * d1 + d2 * d2
    b = 2.0 * (p1 * d1 + p2 * d2)
    c = p1 * p1 + p2 * p2 - 1.0
    t = (-b + math.sqrt(max(b * b - 4.0 * a * c, 0.0))) / (2.0 * a)
    t = min(max(t, 0.0), 1.0)
    return p1 + t * d1, p2 + t * d2


def trace(m, coeff_i, s1, s2, x1, x2, sign, rule, step_len, r_min, r_max,
          sigma_ref, frac_high, frac_low, max_steps, stagnation):
    """Trace one streamline of the plane current (x3 = 0) from (x1, x2).

    Returns
    -------
    points : ndarray, shape (n, 2)
    reason : int
        EXIT, MAX_STEPS or STAGNATION.
    """
    pts = [(x1, x2)]
    reason = MAX_STEPS
    for _ in range(max_steps):
        j1, j2 = _current_scalar(m, coeff_i, s1, s2, x1, x2)
        j1 *= sign
        j2 *= sign
        nj = math.hypot(j1, j2)
        if nj < stagnation:
            reason = STAGNATION
            break
        sig = math.exp(2.0 * (s1 * x1 + s2 * x2))
        if rule == RULE_CLAMPED:
            step = step_len * min(max(sigma_ref / sig, r_min), r_max)
            n1 = x1 + step * j1 / nj
            n2 = x2 + step * j2 / nj
        else:
            frac = frac_high if sig >= sigma_ref else frac_low
            n1 = x1 + frac * j1
            n2 = x2 + frac * j2
        if n1 * n1 + n2 * n2 > 1.0:
            pts.append(_clip_to_circle(x1, x2, n1, n2))
            reason = EXIT
            break
        pts.append((n1, n2))
        x1, x2 = n1, n2
    return np.array(pts, dtype=float), reason
