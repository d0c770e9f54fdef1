"""Generating sequences, (F, G)-integrals, formal powers and Taylor series.

For a separable weight p = p1(x1) p2(x2) the pair (p, i/p) sits in a
generating sequence of period 2::

    even m:  (p1 p2, i / (p1 p2))
    odd m:   (p1 / p2, i p2 / p1)

Formal powers are built recursively,
Z_n^(m+1)(a) = (m+1) * int Z_{n+1}^(m)(a) d_(F_n, G_n) zeta, starting from
Z_n^(0)(a) = lam F_n + mu G_n with real (lam, mu) fixed at the center.
"""
import math
import warnings
from dataclasses import dataclass, field
from typing import Callable, List, Optional

import numpy as np

from ._backend import kernels
from .errors import DegeneratePairError
from .pseudoanalytic import (
    DEGENERACY_TOL,
    GeneratingPair,
    Point,
    _xy,
    adjoint_pair,
    bers_derivative_field,
)
from .quadrature import Path, integrate
from .special import sinhc


@dataclass(frozen=True)
class SeparableP:
    """Non-vanishing weight p(x1, x2) = p1(x1) * p2(x2).

    ``sigma1``/``sigma2`` are set for the exponential weight
    exp(-sigma1 x1 + sigma2 x2), which enables the closed-form powers.
    """

    p1: Callable
    p2: Callable
    sigma1: Optional[float] = None
    sigma2: Optional[float] = None

    @classmethod
    def exponential(cls, sigma1, sigma2):
        s1, s2 = float(sigma1), float(sigma2)
        return cls(lambda x1: np.exp(-s1 * np.asarray(x1)), lambda x2: np.exp(s2 * np.asarray(x2)), s1, s2)

    @classmethod
    def homogeneous(cls):
        return cls.exponential(0.0, 0.0)

    @property
    def is_exponential(self):
        return self.sigma1 is not None and self.sigma2 is not None

    def __call__(self, x1, x2):
        return self.p1(x1) * self.p2(x2)


@dataclass(frozen=True)
class GeneratingSequence:
    base: SeparableP

    @classmethod
    def exponential(cls, sigma1, sigma2):
        return cls(SeparableP.exponential(sigma1, sigma2))

    @classmethod
    def homogeneous(cls):
        return cls(SeparableP.homogeneous())

    def pair_at(self, m):
        return sequence_pair(self, m)


def sequence_pair(seq, m):
    """The m-th generating pair of the period-2 sequence."""
    if m < 0:
        raise ValueError("negative sequence indices are not supported")
    p1, p2 = seq.base.p1, seq.base.p2
    if m % 2 == 0:
        return GeneratingPair(lambda x1, x2: p1(x1) * p2(x2) + 0j, lambda x1, x2: 1j / (p1(x1) * p2(x2)))
    return GeneratingPair(lambda x1, x2: p1(x1) / p2(x2) + 0j, lambda x1, x2: 1j * p2(x2) / p1(x1))


def fg_integral(W, pair, path, tol=1e-9):
    """The (F, G)-integral of W along ``path``.

    G(z) Re int F* W dzeta + F(z) Re int G* W dzeta, with the prefactors
    taken at the path end point z.
    """
    path = path if isinstance(path, Path) else Path.of(path)
    adj = adjoint_pair(pair)

    def integrand(x1, x2):
        w = W(x1, x2)
        return np.stack([adj.Fstar(x1, x2) * w, adj.Gstar(x1, x2) * w])

    (i_f, i_g), _ = integrate(integrand, path, tol)
    e1, e2 = path.end
    return complex(pair.G(e1, e2) * i_f.real + pair.F(e1, e2) * i_g.real)


@dataclass(frozen=True)
class FormalPowerSpec:
    n: int
    m: int
    a: complex
    z0: Point = Point(0.0, 0.0)

    def __post_init__(self):
        if self.n < 0 or self.m < 0:
            raise ValueError("n and m must be non-negative")


def _lambda_mu(pair, a0, z0):
    F = complex(pair.F(*z0))
    G = complex(pair.G(*z0))
    det = F.real * G.imag - F.imag * G.real
    if abs(det) < DEGENERACY_TOL:
        raise DegeneratePairError("generating pair is degenerate at the center")
    a0 = complex(a0)
    lam = (a0.real * G.imag - a0.imag * G.real) / det
    mu = (F.real * a0.imag - F.imag * a0.real) / det
    return lam, mu


def formal_power_zero(seq, n, a0, z0=Point(0.0, 0.0)):
    """Z_n^(0)(a0, z0; .) = lam F_n + mu G_n as a field."""
    pair = seq.pair_at(n)
    lam, mu = _lambda_mu(pair, a0, z0)
    return lambda x1, x2: lam * pair.F(x1, x2) + mu * pair.G(x1, x2)


def _power_field(seq, n, m, a, z0, tol):
    if m == 0:
        return formal_power_zero(seq, n, a, z0)
    inner = _power_field(seq, n + 1, m - 1, a, z0, tol)
    pair = seq.pair_at(n)

    def field(x1, x2):
        x1, x2 = np.broadcast_arrays(np.asarray(x1, float), np.asarray(x2, float))
        out = np.empty(x1.shape, dtype=complex)
        for idx in np.ndindex(x1.shape):
            out[idx] = m * fg_integral(inner, pair, Path.straight(z0, (x1[idx], x2[idx])), tol)
        return out[()] if out.ndim == 0 else out

    return field


def formal_power(seq, spec, at, tol=1e-9, path=None):
    """Numerically constructed formal power Z_n^(m)(a, z0; at).

    The outermost integral follows ``path`` (default: straight segment
    z0 -> at); inner powers are evaluated on straight segments from z0.
    """
    z0 = tuple(spec.z0)
    if spec.m == 0:
        return complex(formal_power_zero(seq, spec.n, spec.a, z0)(*at))
    inner = _power_field(seq, spec.n + 1, spec.m - 1, spec.a, z0, tol)
    if path is None:
        path = Path.straight(z0, tuple(at))
    else:
        path = path if isinstance(path, Path) else Path.of(path)
        if not (np.allclose(path.start, z0) and np.allclose(path.end, at)):
            raise ValueError("path must run from the center z0 to the evaluation point")
    return spec.m * fg_integral(inner, seq.pair_at(spec.n), path, tol)


def formal_power_field(seq, spec, tol=1e-9):
    """Z_n^(m)(a, z0; .) as a vectorized field."""
    return _power_field(seq, spec.n, spec.m, spec.a, tuple(spec.z0), tol)


def _coeff_is_i(coeff):
    c = complex(coeff)
    if c == 1:
        return False
    if c == 1j:
        return True
    raise ValueError("closed forms are tabulated for coeff 1 or i; combine them linearly")


def closed_form_power(m, coeff, sigma1, sigma2, at):
    """Exact Z^(m)(coeff, 0; zeta) for p = exp(-sigma1 x1 + sigma2 x2), m <= 2.

    Finite for every sigma including 0, where it reduces to coeff * zeta**m.
    """
    if m not in (0, 1, 2):
        raise ValueError("closed forms exist for m = 0, 1, 2")
    x1, x2 = _xy(at)
    out = kernels.closed_form_power(m, _coeff_is_i(coeff), float(sigma1), float(sigma2), x1, x2)
    out = np.asarray(out)
    return out[()] if out.ndim == 0 else out


def closed_form_power_textbook(m, coeff, sigma1, sigma2, at, series=True):
    """The closed forms term by term as usually printed (sigma1, sigma2 != 0).

    Degree 2 carries the recursion factor 2 (the printed expression is
    Z^(2)/2). The factor sinh(t)/t with t = sigma1 x1 - sigma2 x2 uses its
    Maclaurin polynomial near t = 0 unless ``series`` is False.
    Kept as an independent cross-check of :func:`closed_form_power`.
    """
    x1, x2 = _xy(at)
    s1, s2 = float(sigma1), float(sigma2)
    e = np.exp
    if m == 0:
        return 1j * e(s1 * x1 - s2 * x2) if _coeff_is_i(coeff) else e(-s1 * x1 + s2 * x2) + 0j
    if m == 1:
        if _coeff_is_i(coeff):
            return -e(s2 * x2) * np.sinh(s1 * x1) / s1 + 1j * e(s1 * x1) * np.sinh(s2 * x2) / s2
        return e(-s1 * x1) * np.sinh(s2 * x2) / s2 + 1j * e(-s2 * x2) * np.sinh(s1 * x1) / s1
    if m != 2:
        raise ValueError("closed forms exist for m = 0, 1, 2")
    t = s1 * x1 - s2 * x2
    if series:
        shc = sinhc(t)
    else:
        with np.errstate(invalid="ignore", divide="ignore"):
            shc = np.sinh(t) / t
    last = 0.5 * (x1 / s2 - x2 / s1) * shc
    if _coeff_is_i(coeff):
        half = (-1j * (x1 / (2 * s1) + x2 / (2 * s2)) * e(s1 * x1 - s2 * x2)
                + 1j * e(-s2 * x2) * np.sinh(s1 * x1) / (2 * s1 ** 2)
                + 1j * e(s1 * x1) * np.sinh(s2 * x2) / (2 * s2 ** 2)
                + (e(-s1 * x1) * np.sinh(s2 * x2) - e(s2 * x2) * np.sinh(s1 * x1)) / (2 * s1 * s2)
                + last)
    else:
        half = ((x1 / (2 * s1) + x2 / (2 * s2)) * e(-s1 * x1 + s2 * x2)
                - e(s2 * x2) * np.sinh(s1 * x1) / (2 * s1 ** 2)
                - e(-s1 * x1) * np.sinh(s2 * x2) / (2 * s2 ** 2)
                + 1j * (e(s1 * x1) * np.sinh(s2 * x2) - e(-s2 * x2) * np.sinh(s1 * x1)) / (2 * s1 * s2)
                + 1j * last)
    return 2.0 * half


@dataclass
class TaylorSeries:
    center: Point
    coefficients: List[complex]
    noise_flags: List[int] = field(default_factory=list)


def taylor_coefficients(W, seq, z0=Point(0.0, 0.0), M=2, h=1e-3):
    """Coefficients a_0..a_M of W in formal powers about z0.

    Higher Bers derivatives W^[k+1] = d_(F_k, G_k) W^[k] are taken by nested
    central differences with step ``h``. Since the derivatives here carry
    no 1/2 factor, a_m = W^[m](z0) / (2**m * m!).
    Orders whose derivative magnitude jumps by more than 1/h relative to
    the previous order are recorded in ``noise_flags`` and warned about.
    """
    if M < 0:
        raise ValueError("M must be non-negative")
    z0 = Point(*z0)
    coeffs, flags = [], []
    current = W
    prev = None
    for k in range(M + 1):
        val = complex(current(*z0))
        if prev is not None and abs(prev) > 0 and abs(val) / abs(prev) > 1.0 / h:
            flags.append(k)
        coeffs.append(val / (2 ** k * math.factorial(k)))
        prev = val
        if k < M:
            current = bers_derivative_field(current, seq.pair_at(k), h)
    if flags:
        warnings.warn(f"possible finite-difference noise amplification at orders {flags}", RuntimeWarning)
    return TaylorSeries(z0, coeffs, flags)


def taylor_eval(series, seq, at, tol=1e-9):
    """Sum_m Re(a_m) Z^(m)(1, z0; at) + Im(a_m) Z^(m)(i, z0; at)."""
    z0 = Point(*series.center)
    closed = seq.base.is_exponential and z0 == (0.0, 0.0)
    total = 0j
    for m, a in enumerate(series.coefficients):
        a = complex(a)
        for part, unit in ((a.real, 1), (a.imag, 1j)):
            if part == 0.0:
                continue
            if closed and m <= 2:
                z = closed_form_power(m, unit, seq.base.sigma1, seq.base.sigma2, at)
            else:
                z = formal_power(seq, FormalPowerSpec(0, m, unit, z0), at, tol)
            total += part * complex(z)
    return total


def path_independence_check(W, pair, loop, tol=1e-9):
    """|Re closed-int G* W dzeta + i Re closed-int F* W dzeta| around ``loop``."""
    loop = loop if isinstance(loop, Path) else Path.of(loop)
    if not loop.closed:
        raise ValueError("loop must be closed (first vertex == last vertex)")
    adj = adjoint_pair(pair)

    def integrand(x1, x2):
        w = W(x1, x2)
        return np.stack([adj.Gstar(x1, x2) * w, adj.Fstar(x1, x2) * w])

    (i_g, i_f), _ = integrate(integrand, loop, tol)
    return abs(complex(i_g.real, i_f.real))
