"""Real quaternions, the Moisil-Theodoresco operator and the quaternionic Ohm law.

Quaternion-valued fields are callables ``q(x1, x2, x3)`` returning arrays
whose last axis holds the four components (q0, q1, q2, q3) on units
(1, e1, e2, e3), with e1 e2 = e3, e2 e3 = e1, e3 e1 = e2 and
e1^2 = e2^2 = e3^2 = e1 e2 e3 = -1.

For sigma = exp(2 sigma1 x1 + 2 sigma2 x2 + 2 sigma3 x3) the equation
(D + M^s) E = 0 with s = grad(sqrt(sigma))/sqrt(sigma) admits the three
solutions E_k = e_k exp(+-sigma1 x1 +- sigma2 x2 +- sigma3 x3), the minus
sign sitting on the k-th exponent. Each s_k' is read as d ln sqrt(s_k)/dx_k,
the only reading that gives p = exp(-sigma1 x1 + sigma2 x2) and the
explicit current densities; the literal (1/s_k) ds_k/dx_k would double
every exponent.
"""
from dataclasses import dataclass

import numpy as np

FD_STEP = 1e-5


@dataclass(frozen=True)
class Quaternion:
    q0: float = 0.0
    q1: float = 0.0
    q2: float = 0.0
    q3: float = 0.0

    @classmethod
    def from_array(cls, a):
        return cls(*(float(c) for c in np.asarray(a, dtype=float)))

    def as_array(self):
        return np.array([self.q0, self.q1, self.q2, self.q3])

    def __mul__(self, other):
        if isinstance(other, Quaternion):
            return Quaternion.from_array(qmul(self.as_array(), other.as_array()))
        return Quaternion.from_array(self.as_array() * other)

    def __rmul__(self, other):
        return Quaternion.from_array(self.as_array() * other)

    def __add__(self, other):
        return Quaternion.from_array(self.as_array() + other.as_array())

    def __sub__(self, other):
        return Quaternion.from_array(self.as_array() - other.as_array())

    def __neg__(self):
        return Quaternion.from_array(-self.as_array())

    def conj(self):
        return Quaternion(self.q0, -self.q1, -self.q2, -self.q3)

    def norm(self):
        return float(np.linalg.norm(self.as_array()))

    @property
    def scalar(self):
        return self.q0

    @property
    def vector(self):
        return np.array([self.q1, self.q2, self.q3])


E0 = Quaternion(1.0, 0.0, 0.0, 0.0)
E1 = Quaternion(0.0, 1.0, 0.0, 0.0)
E2 = Quaternion(0.0, 0.0, 1.0, 0.0)
E3 = Quaternion(0.0, 0.0, 0.0, 1.0)
UNITS = (E0, E1, E2, E3)


def qmul(p, q):
    """Quaternion product on arrays of shape (..., 4)."""
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    a0, a1, a2, a3 = np.moveaxis(p, -1, 0)
    b0, b1, b2, b3 = np.moveaxis(q, -1, 0)
    return np.stack([
        a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
        a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
        a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
        a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
    ], axis=-1)


def quat_mul(p, q):
    """Product of two quaternions (Quaternion instances or (..., 4) arrays)."""
    if isinstance(p, Quaternion) and isinstance(q, Quaternion):
        return p * q
    return qmul(p.as_array() if isinstance(p, Quaternion) else p,
                q.as_array() if isinstance(q, Quaternion) else q)


def _xyz(at):
    x1, x2, x3 = at
    return tuple(np.asarray(c, dtype=float) for c in (x1, x2, x3))


def _grad_components(q, at, h, richardson):
    """Central-difference d q / d x_k for k = 1..3, each of shape (..., 4)."""
    xs = _xyz(at)

    def diff(k, step):
        plus = list(xs)
        minus = list(xs)
        plus[k] = xs[k] + step
        minus[k] = xs[k] - step
        return (np.asarray(q(*plus)) - np.asarray(q(*minus))) / np.asarray(plus[k] - minus[k])[..., None]

    out = []
    for k in range(3):
        d = diff(k, h)
        if richardson:
            d = (4.0 * diff(k, h / 2) - d) / 3.0
        out.append(d)
    return out


def mt_operator(q, at, h=FD_STEP, richardson=False):
    """D q = sum_k e_k dq/dx_k = grad q0 - div q_vec + rot q_vec, by finite differences."""
    grads = _grad_components(q, at, h, richardson)
    return sum(qmul(unit.as_array(), g) for unit, g in zip(UNITS[1:], grads))


def scalar_gradient(phi, at, h=FD_STEP):
    """D phi for a scalar field phi(x1, x2, x3), as a purely vectorial quaternion."""
    xs = _xyz(at)
    comps = [np.zeros(np.broadcast(*xs).shape)]
    for k in range(3):
        plus = list(xs)
        minus = list(xs)
        plus[k] = xs[k] + h
        minus[k] = xs[k] - h
        comps.append((np.asarray(phi(*plus)) - np.asarray(phi(*minus))) / (plus[k] - minus[k]))
    return np.stack(np.broadcast_arrays(*comps), axis=-1)


@dataclass(frozen=True)
class ExpSigmaModel:
    """sigma = exp(2 sigma1 x1 + 2 sigma2 x2 + 2 sigma3 x3)."""

    sigma1: float = 3.0
    sigma2: float = 1.0
    sigma3: float = 0.0

    @property
    def exponents(self):
        return np.array([self.sigma1, self.sigma2, self.sigma3], dtype=float)

    def conductivity(self, x1, x2, x3=0.0):
        return np.exp(2.0 * (self.sigma1 * np.asarray(x1) + self.sigma2 * np.asarray(x2)
                             + self.sigma3 * np.asarray(x3)))

    def sqrt_conductivity(self, x1, x2, x3=0.0):
        return np.exp(self.sigma1 * np.asarray(x1) + self.sigma2 * np.asarray(x2)
                      + self.sigma3 * np.asarray(x3))

    def log_derivative(self, k):
        """s_k' = d ln sqrt(s_k) / dx_k (constant sigma_k here)."""
        return float(self.exponents[k - 1])

    def p(self, x1, x2):
        """Weight of the planar p-analytic reduction, exp(-sigma1 x1 + sigma2 x2)."""
        return np.exp(-self.sigma1 * np.asarray(x1) + self.sigma2 * np.asarray(x2))

    def bers_amplitude(self, k, x1, x2, x3=0.0):
        """Real amplitude of E_k: exponent sign flipped on the k-th variable."""
        signs = np.ones(3)
        signs[k - 1] = -1.0
        s = signs * self.exponents
        return np.exp(s[0] * np.asarray(x1) + s[1] * np.asarray(x2) + s[2] * np.asarray(x3))


def sigma_vector(model, at):
    """grad(sqrt(sigma))/sqrt(sigma) as a purely vectorial quaternion array."""
    x1, x2, x3 = _xyz(at)
    shape = np.broadcast(x1, x2, x3).shape
    out = np.zeros(shape + (4,))
    out[..., 1:] = model.exponents
    return out


def sigma_vector_numeric(sqrt_sigma, at, h=FD_STEP):
    """grad(sqrt_sigma)/sqrt_sigma by central differences, for any positive conductivity."""
    x1, x2, x3 = _xyz(at)
    g = scalar_gradient(sqrt_sigma, at, h)
    return g / np.asarray(sqrt_sigma(x1, x2, x3))[..., None]


def bers_set(model):
    """The three quaternionic solutions E_1, E_2, E_3 of (D + M^s) E = 0."""

    def make(k):
        def field(x1, x2, x3):
            amp = model.bers_amplitude(k, x1, x2, x3)
            out = np.zeros(np.shape(amp) + (4,))
            out[..., k] = amp
            return out
        return field

    return make(1), make(2), make(3)


def ohm_residual(E, model, at, h=FD_STEP, richardson=False):
    """D E + E s, with s = sigma_vector (right multiplication)."""
    x1, x2, x3 = _xyz(at)
    return mt_operator(E, at, h, richardson) + qmul(np.asarray(E(x1, x2, x3)), sigma_vector(model, at))


def product_rule_residual(phi, Q, pvec, at, h=FD_STEP):
    """D(phi Q) + (phi Q) p - (D phi) Q for scalar phi and quaternion constant p.

    Vanishes when Q solves D Q + Q p = 0.
    """
    x1, x2, x3 = _xyz(at)
    prod = lambda a, b, c: np.asarray(phi(a, b, c))[..., None] * np.asarray(Q(a, b, c))
    pq = np.asarray(pvec.as_array() if isinstance(pvec, Quaternion) else pvec)
    lhs = mt_operator(prod, at, h) + qmul(prod(x1, x2, x3), pq)
    return lhs - qmul(scalar_gradient(phi, at, h), np.asarray(Q(x1, x2, x3)))


def gol04_residual(phi1, phi2, model, at, h=FD_STEP):
    """Residuals of the system coupling phi1 and phi2 when phi3 = 0.

    Returns the four scalar residuals::

        d phi1/dx1 + (1/p^2) d phi2/dx2
        d phi1/dx2 - (1/p^2) d phi2/dx1
        d phi1/dx3
        d phi2/dx3

    with p = exp(-sigma1 x1 + sigma2 x2).
    """
    x1, x2, x3 = _xyz(at)
    g1 = scalar_gradient(phi1, at, h)
    g2 = scalar_gradient(phi2, at, h)
    w = 1.0 / model.p(x1, x2) ** 2
    return (g1[..., 1] + w * g2[..., 2], g1[..., 2] - w * g2[..., 1], g1[..., 3], g2[..., 3])


def lift_planar_solution(W, model):
    """Quaternionic field phi1 E_1 + phi2 E_2 from a planar Vekua solution W(x1, x2).

    phi1 = Re(W)/p and phi2 = p Im(W), so W = p phi1 + (i/p) phi2.
    """
    E1f, E2f, _ = bers_set(model)

    def phi1(x1, x2, x3):
        return np.real(W(x1, x2)) / model.p(x1, x2) + 0.0 * np.asarray(x3)

    def phi2(x1, x2, x3):
        return model.p(x1, x2) * np.imag(W(x1, x2)) + 0.0 * np.asarray(x3)

    def field(x1, x2, x3):
        return (np.asarray(phi1(x1, x2, x3))[..., None] * E1f(x1, x2, x3)
                + np.asarray(phi2(x1, x2, x3))[..., None] * E2f(x1, x2, x3))

    field.phi1 = phi1
    field.phi2 = phi2
    return field
