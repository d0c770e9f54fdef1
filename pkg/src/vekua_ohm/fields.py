"""Current densities, electric potentials, boundary traces and streamlines.

Planar fields live at x3 = 0 unless a third coordinate is given. For the
exponential conductivity the current of a formal power Z is::

    j = ( sqrt(sigma) E_1 Re(Z) / p,  sqrt(sigma) E_2 p Im(Z),  0 )

and satisfies j = -sigma grad u for the potentials below (integration
constants dropped).
"""
import math
import warnings
from dataclasses import dataclass, field
from typing import Callable, List, NamedTuple, Optional

import numpy as np

from ._backend import kernels
from ._kernels_py import _clip_to_circle
from .errors import UnsupportedClosedFormError
from .formal_powers import (
    FormalPowerSpec,
    GeneratingSequence,
    _coeff_is_i,
    closed_form_power,
    formal_power_field,
)
from .quaternion import ExpSigmaModel
from .special import expm1c, expm2c

SIGMA_LITERAL_MIN = 1e-8
HOMOGENEOUS_PLOT_SCALE = 20.0


class CurrentVector(NamedTuple):
    j1: np.ndarray
    j2: np.ndarray
    j3: np.ndarray


def _plane(at):
    if len(at) == 3:
        x1, x2, x3 = at
    else:
        (x1, x2), x3 = at, 0.0
    x1, x2, x3 = (np.asarray(c, dtype=float) for c in (x1, x2, x3))
    return np.broadcast_arrays(x1, x2, x3)


def homogeneous_current(m, coeff, at):
    """Current of coeff * zeta**m in a medium with sigma = 1."""
    x1, x2, _ = _plane(at)
    zero = np.zeros_like(x1)
    one = np.ones_like(x1)
    ci = _coeff_is_i(coeff)
    if m == 0:
        vec = (zero, one) if ci else (one, zero)
    elif m == 1:
        vec = (-x1, x2) if ci else (x2, x1)
    elif m == 2:
        vec = (-2 * x1 * x2, x2 ** 2 - x1 ** 2) if ci else (x2 ** 2 - x1 ** 2, 2 * x1 * x2)
    else:
        raise UnsupportedClosedFormError("tabulated homogeneous currents cover m <= 2")
    return CurrentVector(vec[0] + 0.0, vec[1] + 0.0, zero)


def current_density(m, coeff, model, at, tol=1e-9):
    """Current density of Z^(m)(coeff, 0; zeta) for an exponential conductivity.

    Closed-form powers for m <= 2; numeric formal powers above that, with a
    warning since each point costs m nested quadratures.
    """
    x1, x2, x3 = _plane(at)
    if m <= 2:
        z = closed_form_power(m, coeff, model.sigma1, model.sigma2, (x1, x2))
    else:
        warnings.warn(f"m = {m}: using numerically constructed formal powers", RuntimeWarning)
        seq = GeneratingSequence.exponential(model.sigma1, model.sigma2)
        z = formal_power_field(seq, FormalPowerSpec(0, m, coeff), tol)(x1, x2)
    root = model.sqrt_conductivity(x1, x2, x3)
    p = model.p(x1, x2)
    j1 = root * model.bers_amplitude(1, x1, x2, x3) * np.real(z) / p
    j2 = root * model.bers_amplitude(2, x1, x2, x3) * p * np.imag(z)
    return CurrentVector(j1, j2, np.zeros_like(j1))


def current_density_fast(m, coeff, model, at):
    """Same as :func:`current_density` for m <= 2, through the kernel backend."""
    x1, x2, x3 = _plane(at)
    j1, j2 = kernels.exp_current(m, _coeff_is_i(coeff), model.sigma1, model.sigma2, model.sigma3, x1, x2, x3)
    return CurrentVector(np.asarray(j1), np.asarray(j2), np.zeros(np.shape(j1)))


def _regularized(m, ci, s1, s2, x1, x2):
    if m == 0:
        return -x2 * expm1c(-2 * s2 * x2) if ci else -x1 * expm1c(-2 * s1 * x1)
    if ci:
        return x1 ** 2 * expm2c(-2 * s1 * x1) - x2 ** 2 * expm2c(-2 * s2 * x2)
    return -x1 * x2 * expm1c(-2 * s1 * x1) * expm1c(-2 * s2 * x2)


def potential(m, coeff, model, at, form="literal"):
    """Electric potential u with j = -sigma grad u, for m in (0, 1).

    ``form="literal"`` gives the usual expressions, e.g.
    u^(0)(1) = exp(-2 sigma1 x1)/(2 sigma1). They are singular as
    sigma_k -> 0, so below 1e-8 (or with ``form="regularized"``) the
    constant is shifted to give the finite limit form, which tends to the
    homogeneous potential.
    """
    if m not in (0, 1):
        raise UnsupportedClosedFormError("closed-form potentials exist only for m = 0, 1; "
                                         "degree 2 needs numerical integration")
    x1, x2, _ = _plane(at)
    ci = _coeff_is_i(coeff)
    s1, s2 = float(model.sigma1), float(model.sigma2)
    need = {(0, False): (s1,), (0, True): (s2,)}.get((m, ci), (s1, s2))
    if form == "regularized" or min(abs(s) for s in need) < SIGMA_LITERAL_MIN:
        return _regularized(m, ci, s1, s2, x1, x2)
    if form != "literal":
        raise ValueError(f"unknown form {form!r}")
    e1, e2 = np.exp(-2 * s1 * x1), np.exp(-2 * s2 * x2)
    if m == 0:
        return e2 / (2 * s2) if ci else e1 / (2 * s1)
    if ci:
        return x1 / (2 * s1) - x2 / (2 * s2) + e1 / (4 * s1 ** 2) - e2 / (4 * s2 ** 2)
    return (e1 + e2 - e1 * e2) / (4 * s1 * s2)


def homogeneous_potential(m, coeff, at):
    """Potential of the sigma = 1 current: -x1, -x2, -x1 x2 or (x1^2 - x2^2)/2."""
    return potential(m, coeff, ExpSigmaModel(0.0, 0.0, 0.0), at)


def _grad_u(m, coeff, model, x1, x2, h):
    h1 = h * np.maximum(1.0, np.abs(x1))
    h2 = h * np.maximum(1.0, np.abs(x2))
    u = lambda a, b: potential(m, coeff, model, (a, b))
    g1 = (u(x1 + h1, x2) - u(x1 - h1, x2)) / ((x1 + h1) - (x1 - h1))
    g2 = (u(x1, x2 + h2) - u(x1, x2 - h2)) / ((x2 + h2) - (x2 - h2))
    return g1, g2


def gradient_consistency(m, coeff, model, at, h=1e-5):
    """max |j + sigma grad u| over components, grad u by central differences."""
    x1, x2, x3 = _plane(at)
    j = current_density(m, coeff, model, (x1, x2, x3))
    sig = model.conductivity(x1, x2, x3)
    g1, g2 = _grad_u(m, coeff, model, x1, x2, h)
    err = np.maximum(np.abs(j.j1 + sig * g1), np.abs(j.j2 + sig * g2))
    return err[()] if err.ndim == 0 else err


def divergence_residual(m, coeff, model, at, h=1e-5, method="current"):
    """Finite-difference div(sigma grad u) at ``at``.

    ``method="current"`` differentiates -j (= sigma grad u) by central
    differences; ``method="potential"`` uses the conservative 5-point
    stencil on u with sigma at the half points.
    """
    x1, x2, x3 = _plane(at)
    if method == "current":
        jf = lambda a, b: current_density(m, coeff, model, (a, b, x3))
        d1 = (jf(x1 + h, x2).j1 - jf(x1 - h, x2).j1) / (2 * h)
        d2 = (jf(x1, x2 + h).j2 - jf(x1, x2 - h).j2) / (2 * h)
        return -(d1 + d2)
    if method == "potential":
        u = lambda a, b: potential(m, coeff, model, (a, b))
        s = lambda a, b: model.conductivity(a, b, x3)
        u0 = u(x1, x2)
        f1 = s(x1 + h / 2, x2) * (u(x1 + h, x2) - u0) - s(x1 - h / 2, x2) * (u0 - u(x1 - h, x2))
        f2 = s(x1, x2 + h / 2) * (u(x1, x2 + h) - u0) - s(x1, x2 - h / 2) * (u0 - u(x1, x2 - h))
        return (f1 + f2) / h ** 2
    raise ValueError(f"unknown method {method!r}")


class PotentialSample(NamedTuple):
    theta: float
    u: float
    u_h: float


@dataclass
class BoundaryTrace:
    samples: List[PotentialSample]
    homogeneous_scale: float = HOMOGENEOUS_PLOT_SCALE


def boundary_trace(m, coeff, model, n_theta=360):
    """Potentials on the unit circle at theta = 2 pi k / n_theta.

    ``u_h`` is the homogeneous (sigma = 1) potential. ``homogeneous_scale``
    is a plotting hint for co-displaying u_h; stored values are unscaled.
    """
    if n_theta < 3:
        raise ValueError("n_theta must be at least 3")
    theta = 2 * np.pi * np.arange(n_theta) / n_theta
    x1, x2 = np.cos(theta), np.sin(theta)
    u = potential(m, coeff, model, (x1, x2))
    uh = homogeneous_potential(m, coeff, (x1, x2))
    return BoundaryTrace([PotentialSample(float(t), float(a), float(b)) for t, a, b in zip(theta, u, uh)])


@dataclass(frozen=True)
class StepRule:
    """Displacement rule for streamline tracing.

    ``"clamped"``: step length = length * clip(sigma_ref / sigma(x), r_min, r_max)
    along the unit current direction; the defaults span lengths 1e-4 .. 0.1.
    ``"two-tier"``: displacement = frac * j with frac = frac_high where
    sigma(x) >= sigma_ref and frac_low elsewhere (0.01 % and 10 % of |j|).
    ``sigma_ref`` defaults to the conductivity at the disk center.
    """

    kind: str = "clamped"
    length: float = 0.01
    r_min: float = 0.01
    r_max: float = 10.0
    sigma_ref: Optional[float] = None
    frac_high: float = 1e-4
    frac_low: float = 0.1

    def __post_init__(self):
        if self.kind not in ("clamped", "two-tier"):
            raise ValueError(f"unknown step rule {self.kind!r}")

    def displacement(self, sigma_x, jnorm, sigma_ref):
        """Length of the step taken from a point with conductivity ``sigma_x``."""
        if self.kind == "clamped":
            return self.length * min(max(sigma_ref / sigma_x, self.r_min), self.r_max)
        return (self.frac_high if sigma_x >= sigma_ref else self.frac_low) * jnorm


TERMINATIONS = {kernels.EXIT: "boundary-exit", kernels.MAX_STEPS: "max-steps",
                kernels.STAGNATION: "stagnation"}


@dataclass
class Streamline:
    points: np.ndarray
    terminated_by: str
    direction: float = 1.0

    @property
    def steps(self):
        return len(self.points) - 1


def trace_streamline(field, start, rule=StepRule(), max_steps=10000, conductivity=None,
                     direction=1.0, stagnation=1e-12):
    """Explicit stepping x <- x + step(x) * j(x)/|j(x)| from ``start``.

    ``field(x1, x2)`` returns (j1, j2, ...); ``conductivity(x1, x2)`` feeds
    the step rule (default 1). The final step of a boundary exit is cut at
    the unit circle.
    """
    x1, x2 = float(start[0]), float(start[1])
    if x1 * x1 + x2 * x2 > 1.0:
        raise ValueError("start point must lie in the closed unit disk")
    sig_at = conductivity if conductivity is not None else (lambda a, b: 1.0)
    sigma_ref = rule.sigma_ref if rule.sigma_ref is not None else float(sig_at(0.0, 0.0))
    pts = [(x1, x2)]
    reason = "max-steps"
    for _ in range(max_steps):
        j = field(x1, x2)
        j1, j2 = direction * float(j[0]), direction * float(j[1])
        nj = math.hypot(j1, j2)
        if nj < stagnation:
            reason = "stagnation"
            break
        if rule.kind == "clamped":
            step = rule.displacement(float(sig_at(x1, x2)), nj, sigma_ref)
            n1, n2 = x1 + step * j1 / nj, x2 + step * j2 / nj
        else:
            frac = rule.displacement(float(sig_at(x1, x2)), 1.0, sigma_ref)
            n1, n2 = x1 + frac * j1, x2 + frac * j2
        if n1 * n1 + n2 * n2 > 1.0:
            pts.append(_clip_to_circle(x1, x2, n1, n2))
            reason = "boundary-exit"
            break
        pts.append((n1, n2))
        x1, x2 = n1, n2
    return Streamline(np.array(pts), reason, direction)


def trace_current(m, coeff, model, start, rule=StepRule(), max_steps=10000, direction=1.0,
                  stagnation=1e-12):
    """Streamline of the closed-form current j^(m)(coeff) at x3 = 0 (kernel backend)."""
    x1, x2 = float(start[0]), float(start[1])
    if x1 * x1 + x2 * x2 > 1.0:
        raise ValueError("start point must lie in the closed unit disk")
    sigma_ref = rule.sigma_ref if rule.sigma_ref is not None else float(model.conductivity(0.0, 0.0))
    code = kernels.RULE_CLAMPED if rule.kind == "clamped" else kernels.RULE_TWO_TIER
    pts, reason = kernels.trace(m, _coeff_is_i(coeff), float(model.sigma1), float(model.sigma2), x1, x2,
                                float(direction), code, rule.length, rule.r_min, rule.r_max, sigma_ref,
                                rule.frac_high, rule.frac_low, int(max_steps), stagnation)
    return Streamline(np.asarray(pts), TERMINATIONS[int(reason)], direction)


def seed_ring(n, radius=0.5, phase=0.0):
    """``n`` seed points evenly spaced on a circle about the origin."""
    th = phase + 2 * np.pi * np.arange(n) / n
    return np.column_stack([radius * np.cos(th), radius * np.sin(th)])
