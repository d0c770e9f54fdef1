"""Numerically stable elementary functions with removable singularities.

All functions accept scalars or numpy arrays.
"""
import numpy as np

SINHC_SWITCH = 1e-4
HEXP_SWITCH = 1e-2
EXPM2_SWITCH = 1e-2

_HEXP = (1.0, 1 / 3, 1 / 6, 1 / 30, 1 / 120, 1 / 840, 1 / 5040)
_EXPM2 = (1 / 2, 1 / 6, 1 / 24, 1 / 120, 1 / 720, 1 / 5040, 1 / 40320)


def _horner(coeffs, t):
    acc = np.zeros_like(t) + coeffs[-1]
    for c in coeffs[-2::-1]:
        acc = acc * t + c
    return acc


def sinhc(t):
    """sinh(t)/t, with a degree-6 Maclaurin polynomial for |t| < 1e-4."""
    t = np.asarray(t, dtype=float)
    small = np.abs(t) < SINHC_SWITCH
    safe = np.where(small, 1.0, t)
    t2 = t * t
    series = 1.0 + t2 / 6.0 + t2 * t2 / 120.0 + t2 * t2 * t2 / 5040.0
    out = np.where(small, series, np.sinh(safe) / safe)
    return out[()] if out.ndim == 0 else out


def sinh_over(sigma, s):
    """sinh(sigma*s)/sigma, finite as sigma -> 0 (limit s)."""
    return s * sinhc(np.multiply(sigma, s))


def hexp(u):
    """(u*exp(u) - sinh(u))/u**2; equals 1 at u = 0."""
    u = np.asarray(u, dtype=float)
    small = np.abs(u) < HEXP_SWITCH
    safe = np.where(small, 1.0, u)
    direct = (safe * np.exp(safe) - np.sinh(safe)) / (safe * safe)
    out = np.where(small, _horner(_HEXP, u), direct)
    return out[()] if out.ndim == 0 else out


def expm1c(t):
    """expm1(t)/t; equals 1 at t = 0."""
    t = np.asarray(t, dtype=float)
    zero = t == 0.0
    safe = np.where(zero, 1.0, t)
    out = np.where(zero, 1.0, np.expm1(safe) / safe)
    return out[()] if out.ndim == 0 else out


def expm2c(t):
    """(exp(t) - 1 - t)/t**2; equals 1/2 at t = 0."""
    t = np.asarray(t, dtype=float)
    small = np.abs(t) < EXPM2_SWITCH
    safe = np.where(small, 1.0, t)
    direct = (np.expm1(safe) - safe) / (safe * safe)
    out = np.where(small, _horner(_EXPM2, t), direct)
    return out[()] if out.ndim == 0 else out
