"""Adaptive Gauss-Legendre quadrature of complex line integrals along polylines."""
from typing import NamedTuple

import numpy as np

from .errors import EvaluationDomainError, QuadratureError

GL_ORDER = 16
MAX_DEPTH = 20

_rules = {}


def _rule(order):
    if order not in _rules:
        t, w = np.polynomial.legendre.leggauss(order)
        _rules[order] = ((t + 1.0) / 2.0, w / 2.0)
    return _rules[order]


class Path(NamedTuple):
    """Polyline through ``vertices`` (sequence of (x1, x2)), from first to last."""

    vertices: np.ndarray

    @classmethod
    def of(cls, vertices):
        v = np.asarray(vertices, dtype=float)
        if v.ndim != 2 or v.shape[1] != 2 or len(v) < 2:
            raise ValueError("a path needs at least two (x1, x2) vertices")
        if not np.all(np.isfinite(v)):
            raise ValueError("path vertices must be finite")
        return cls(v)

    @classmethod
    def straight(cls, start, end):
        return cls.of([start, end])

    @classmethod
    def circle(cls, center, radius, n=64):
        """Closed polygon with ``n`` sides inscribed in a circle."""
        th = np.linspace(0.0, 2 * np.pi, n + 1)
        v = np.column_stack([center[0] + radius * np.cos(th), center[1] + radius * np.sin(th)])
        v[-1] = v[0]
        return cls.of(v)

    @property
    def start(self):
        return tuple(self.vertices[0])

    @property
    def end(self):
        return tuple(self.vertices[-1])

    @property
    def closed(self):
        return bool(np.all(self.vertices[0] == self.vertices[-1]))

    def length(self):
        return float(np.sum(np.hypot(*np.diff(self.vertices, axis=0).T)))


def _panel(func, a, b, t, w):
    """GL rule for int f dzeta over the straight segment a -> b."""
    s = t[:, None]
    pts = a[None, :] + s * (b - a)[None, :]
    vals = np.asarray(func(pts[:, 0], pts[:, 1]))
    if not np.all(np.isfinite(vals)):
        raise EvaluationDomainError("integrand is not finite on the path")
    dz = (b[1] - a[1]) + 1j * (b[0] - a[0])
    return (vals @ w) * dz


def integrate(func, path, tol=1e-9, order=GL_ORDER, max_depth=MAX_DEPTH):
    """Integral of ``func`` d(zeta) along ``path``, with zeta = x2 + i*x1.

    ``func(x1, x2)`` receives 1-D node arrays and returns an array whose last
    axis runs over the nodes (leading axes integrate independently).
    Each panel compares one GL rule against the same rule on its two
    halves and bisects until the difference is below the panel's share of
    ``tol`` (proportional to its length).

    Returns
    -------
    value : complex or ndarray of complex
    error : float
        Sum of accepted panel estimates.
    """
    path = path if isinstance(path, Path) else Path.of(path)
    t, w = _rule(order)
    total = path.length()
    if total == 0.0:
        probe = np.asarray(func(path.vertices[:1, 0], path.vertices[:1, 1]))
        return np.zeros(probe.shape[:-1], dtype=complex)[()], 0.0
    value = 0.0
    err = 0.0
    for a, b in zip(path.vertices[:-1], path.vertices[1:]):
        seg_len = float(np.hypot(*(b - a)))
        if seg_len == 0.0:
            continue
        stack = [(a, b, _panel(func, a, b, t, w), 0)]
        while stack:
            pa, pb, coarse, depth = stack.pop()
            mid = (pa + pb) / 2.0
            left = _panel(func, pa, mid, t, w)
            right = _panel(func, mid, pb, t, w)
            fine = left + right
            est = float(np.max(np.abs(fine - coarse)))
            share = tol * float(np.hypot(*(pb - pa))) / total
            if est <= share:
                value = value + fine
                err += est
            elif depth + 1 >= max_depth:
                raise QuadratureError(f"no convergence after {max_depth} bisections", est)
            else:
                stack.append((mid, pb, right, depth + 1))
                stack.append((pa, mid, left, depth + 1))
    return value, err
