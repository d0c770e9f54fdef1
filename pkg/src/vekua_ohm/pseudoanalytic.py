"""Complex-plane primitives for pseudoanalytic function theory.

Coordinates
-----------
Points are pairs ``(x1, x2)``; the complex coordinate is ``zeta = x2 + i*x1``.
The Wirtinger-type operators carry no factor 1/2::

    d_zeta_bar = d/dx2 + i d/dx1
    d_zeta     = d/dx2 - i d/dx1

Fields are callables ``f(x1, x2)`` that accept scalars or broadcastable
numpy arrays. A field may expose ``partials(x1, x2) -> (df/dx1, df/dx2)``;
exact partials take precedence over finite differences.
"""
import warnings
from dataclasses import dataclass
from typing import Callable, NamedTuple, Optional

import numpy as np

from .errors import DegeneratePairError, EvaluationDomainError, SingularWeightError

FD_REL_STEP = 1e-5
DEGENERACY_TOL = 1e-12
COND_WARN = 1e8


class Point(NamedTuple):
    x1: float
    x2: float

    @property
    def zeta(self):
        return complex(self.x2, self.x1)

    @classmethod
    def from_zeta(cls, z):
        z = complex(z)
        return cls(z.imag, z.real)


def zeta(x1, x2):
    """Complex coordinate x2 + i*x1."""
    return np.asarray(x2) + 1j * np.asarray(x1)


def _xy(at):
    x1, x2 = at
    return np.asarray(x1, dtype=float), np.asarray(x2, dtype=float)


@dataclass(frozen=True)
class ComplexField:
    """A complex field with optional exact partial derivatives."""

    func: Callable
    partials: Optional[Callable] = None

    def __call__(self, x1, x2):
        return self.func(x1, x2)


def as_field(f):
    """Wrap constants as fields; pass callables through."""
    if callable(f):
        return f
    c = complex(f)
    return lambda x1, x2: c + 0.0 * (np.asarray(x1) + np.asarray(x2))


def _eval(field, x1, x2):
    val = np.asarray(field(x1, x2))
    if not np.all(np.isfinite(val)):
        raise EvaluationDomainError(f"field is not finite near x1={x1!r}, x2={x2!r}")
    return val


def partials(field, at, h=None):
    """(d/dx1, d/dx2) of ``field`` at ``at``.

    Central differences with step ``h`` (default ``1e-5 * max(1, |x_k|)``)
    unless the field carries exact partials.
    """
    x1, x2 = _xy(at)
    exact = getattr(field, "partials", None)
    if exact is not None:
        d1, d2 = exact(x1, x2)
        return np.asarray(d1), np.asarray(d2)
    h1 = FD_REL_STEP * np.maximum(1.0, np.abs(x1)) if h is None else h
    h2 = FD_REL_STEP * np.maximum(1.0, np.abs(x2)) if h is None else h
    p1, m1 = x1 + h1, x1 - h1
    p2, m2 = x2 + h2, x2 - h2
    d1 = (_eval(field, p1, x2) - _eval(field, m1, x2)) / (p1 - m1)
    d2 = (_eval(field, x1, p2) - _eval(field, x1, m2)) / (p2 - m2)
    return d1, d2


def d_zeta_bar(field, at, h=None):
    """d/dx2 + i d/dx1 (no 1/2 factor)."""
    d1, d2 = partials(field, at, h)
    return d2 + 1j * d1


def d_zeta(field, at, h=None):
    """d/dx2 - i d/dx1 (no 1/2 factor)."""
    d1, d2 = partials(field, at, h)
    return d2 - 1j * d1


@dataclass(frozen=True)
class GeneratingPair:
    """Two complex fields (F, G) with Im(conj(F) G) > 0."""

    F: Callable
    G: Callable

    @classmethod
    def homogeneous(cls):
        return cls(as_field(1.0), as_field(1j))

    @classmethod
    def from_p(cls, p):
        """The pair (p, i/p) of a non-vanishing real weight p."""
        return cls(lambda x1, x2: p(x1, x2) + 0j, lambda x1, x2: 1j / p(x1, x2))

    def determinant(self, at):
        """F conj(G) - conj(F) G, which equals -2i Im(conj(F) G)."""
        x1, x2 = _xy(at)
        F = np.asarray(self.F(x1, x2))
        G = np.asarray(self.G(x1, x2))
        return F * np.conj(G) - np.conj(F) * G

    def check(self, at):
        """Raise DegeneratePairError unless Im(conj(F) G) > 0 at every point of ``at``."""
        x1, x2 = _xy(at)
        im = np.imag(np.conj(self.F(x1, x2)) * self.G(x1, x2))
        if not np.all(im > 0):
            raise DegeneratePairError("Im(conj(F) G) > 0 violated")


def _denominator(pair, x1, x2):
    den = pair.determinant((x1, x2))
    if np.any(np.abs(den) < DEGENERACY_TOL):
        raise DegeneratePairError(f"|F conj(G) - conj(F) G| < {DEGENERACY_TOL:g}")
    return den


class CharCoefficients(NamedTuple):
    A: complex
    a: complex
    B: complex
    b: complex


def characteristic_coefficients(pair, at, h=None):
    """The characteristic coefficients (A, a, B, b) of ``pair`` at ``at``."""
    x1, x2 = _xy(at)
    den = _denominator(pair, x1, x2)
    F = np.asarray(pair.F(x1, x2))
    G = np.asarray(pair.G(x1, x2))
    Fz, Gz = d_zeta(pair.F, at, h), d_zeta(pair.G, at, h)
    Fzb, Gzb = d_zeta_bar(pair.F, at, h), d_zeta_bar(pair.G, at, h)
    A = -(np.conj(F) * Gz - np.conj(G) * Fz) / den
    a = -(np.conj(F) * Gzb - np.conj(G) * Fzb) / den
    B = (F * Gz - G * Fz) / den
    b = (F * Gzb - G * Fzb) / den
    return CharCoefficients(A, a, B, b)


def decompose(W, pair, at):
    """Real (phi, psi) with W = phi*F + psi*G at ``at``.

    Warns when the 2x2 real system has condition number above 1e8.
    """
    x1, x2 = _xy(at)
    F = np.asarray(pair.F(x1, x2))
    G = np.asarray(pair.G(x1, x2))
    w = np.asarray(W(x1, x2))
    det = np.imag(np.conj(F) * G)
    if np.any(np.abs(det) < DEGENERACY_TOL):
        raise DegeneratePairError("cannot decompose over a degenerate pair")
    # singular values of [[Re F, Re G], [Im F, Im G]]: s1*s2 = |det|, s1^2 + s2^2 = fro^2
    fro2 = np.abs(F) ** 2 + np.abs(G) ** 2
    disc = np.sqrt(np.maximum(fro2 ** 2 - 4 * det ** 2, 0.0))
    cond = np.sqrt((fro2 + disc) / np.maximum(fro2 - disc, 1e-300))
    if np.any(cond > COND_WARN):
        warnings.warn(f"ill-conditioned decomposition (cond = {np.max(cond):.3e})", RuntimeWarning)
    phi = np.imag(w * np.conj(G)) / np.imag(F * np.conj(G))
    psi = np.imag(w * np.conj(F)) / det
    return phi, psi


def bers_derivative(W, pair, at, h=None, method="coefficients"):
    """The (F, G)-derivative of W at ``at``.

    ``method="coefficients"`` evaluates d_zeta W - A W - B conj(W);
    ``method="decomposition"`` evaluates (d_zeta phi) F + (d_zeta psi) G with
    W = phi F + psi G. The two agree for pseudoanalytic W.
    """
    x1, x2 = _xy(at)
    if method == "coefficients":
        co = characteristic_coefficients(pair, at, h)
        w = np.asarray(W(x1, x2))
        return d_zeta(W, at, h) - co.A * w - co.B * np.conj(w)
    if method == "decomposition":
        phi = lambda s1, s2: decompose(W, pair, (s1, s2))[0]
        psi = lambda s1, s2: decompose(W, pair, (s1, s2))[1]
        return d_zeta(phi, at, h) * pair.F(x1, x2) + d_zeta(psi, at, h) * pair.G(x1, x2)
    raise ValueError(f"unknown method {method!r}")


def bers_derivative_field(W, pair, h=None):
    """The (F, G)-derivative of W as a field, for nesting."""
    return lambda x1, x2: bers_derivative(W, pair, (x1, x2), h)


def vekua_residual(W, pair, at, h=None):
    """d_zeta_bar W - a W - b conj(W); zero iff W is (F, G)-pseudoanalytic."""
    x1, x2 = _xy(at)
    co = characteristic_coefficients(pair, at, h)
    w = np.asarray(W(x1, x2))
    return d_zeta_bar(W, at, h) - co.a * w - co.b * np.conj(w)


@dataclass(frozen=True)
class AdjointPair:
    Fstar: Callable
    Gstar: Callable


def adjoint_pair(pair):
    """F* = -2 conj(F)/(F conj(G) - conj(F) G), G* = 2 conj(G)/(same)."""

    def Fstar(x1, x2):
        den = _denominator(pair, x1, x2)
        return -2.0 * np.conj(pair.F(x1, x2)) / den

    def Gstar(x1, x2):
        den = _denominator(pair, x1, x2)
        return 2.0 * np.conj(pair.G(x1, x2)) / den

    return AdjointPair(Fstar, Gstar)


def p_analytic_residual(phi, psi, p, at, h=None):
    """Residuals of the p-analytic system in (x1, x2) axes.

    With x -> x2 and y -> x1 the system reads::

        d phi/dx2 = (1/p^2) d psi/dx1
        d phi/dx1 = -(1/p^2) d psi/dx2
    """
    x1, x2 = _xy(at)
    pv = np.asarray(p(x1, x2), dtype=float)
    if np.any(np.abs(pv) < DEGENERACY_TOL):
        raise SingularWeightError("p vanishes")
    phi1, phi2 = partials(phi, at, h)
    psi1, psi2 = partials(psi, at, h)
    w = 1.0 / pv ** 2
    return np.real(phi2 - w * psi1), np.real(phi1 + w * psi2)


def mult_identity_residual(phi, F, a, b, at, h=None):
    """(d_zeta_bar - a - b C)(phi F) - (d_zeta_bar phi) F, C = conjugation.

    Vanishes whenever F solves d_zeta_bar F - a F - b conj(F) = 0.
    """
    x1, x2 = _xy(at)
    a, b = as_field(a), as_field(b)
    prod = lambda s1, s2: phi(s1, s2) * F(s1, s2)
    w = np.asarray(prod(x1, x2))
    lhs = d_zeta_bar(prod, at, h) - a(x1, x2) * w - b(x1, x2) * np.conj(w)
    return lhs - d_zeta_bar(phi, at, h) * F(x1, x2)
