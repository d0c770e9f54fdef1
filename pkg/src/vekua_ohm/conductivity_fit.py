"""Piecewise separable conductivities fitted to samples on horizontal lines.

Samples on rows x2 = z_j give, per row, a 1-D interpolant f_j(x1). Around
each row the conductivity is taken as

    sigma(x1, x2) = (x2 + K) * alpha_j(x1),   alpha_j = f_j / (z_j + K),

which is exactly separable in its band and reproduces the row samples.
"""
import csv
import json
from dataclasses import dataclass, field
from typing import List

import numpy as np
from scipy.interpolate import PchipInterpolator

from .errors import DomainError, FitError

GROUP_TOL = 1e-12
K_MARGIN = 1e-6
NODE_SLACK = 1e-12
INTERPS = ("cubic", "linear")


@dataclass(frozen=True)
class Row:
    ordinate: float
    x1: np.ndarray
    sigma: np.ndarray


@dataclass
class SampleGrid:
    """Conductivity samples grouped in rows of common x2, highest row first."""

    rows: List[Row]

    def __post_init__(self):
        if not self.rows:
            raise FitError("a sample grid needs at least one row")
        ords = [r.ordinate for r in self.rows]
        if any(b >= a for a, b in zip(ords, ords[1:])):
            raise FitError("row ordinates must be strictly decreasing (no duplicates)")
        for r in self.rows:
            if len(r.x1) < 2:
                raise FitError(f"row x2 = {r.ordinate!r} has fewer than two nodes")
            if np.any(np.diff(r.x1) <= 0):
                raise FitError(f"row x2 = {r.ordinate!r}: abscissae must be strictly increasing")
            if not np.all(np.isfinite(r.sigma)) or np.any(r.sigma <= 0):
                raise FitError(f"row x2 = {r.ordinate!r}: conductivity samples must be positive")

    @classmethod
    def from_rows(cls, rows):
        """Build from ``[(x2, [(x1, sigma), ...]), ...]`` in any order."""
        out = []
        for x2, nodes in rows:
            nodes = sorted((float(a), float(s)) for a, s in nodes)
            out.append(Row(float(x2), np.array([n[0] for n in nodes]), np.array([n[1] for n in nodes])))
        out.sort(key=lambda r: -r.ordinate)
        return cls(out)

    @classmethod
    def from_points(cls, x1, x2, sigma, tol=GROUP_TOL):
        """Group scattered (x1, x2, sigma) samples into rows of equal x2 (within ``tol``)."""
        x1, x2, sigma = (np.asarray(a, dtype=float).ravel() for a in (x1, x2, sigma))
        if not (len(x1) == len(x2) == len(sigma)):
            raise FitError("x1, x2 and sigma must have equal lengths")
        order = np.argsort(-x2, kind="stable")
        groups = []
        for k in order:
            if groups and abs(groups[-1][0] - x2[k]) <= tol:
                groups[-1][1].append((x1[k], sigma[k]))
            else:
                groups.append([x2[k], [(x1[k], sigma[k])]])
        return cls.from_rows(groups)

    @classmethod
    def from_function(cls, func, x1_nodes, x2_rows):
        x1_nodes = np.asarray(x1_nodes, dtype=float)
        return cls.from_rows([(z, list(zip(x1_nodes, func(x1_nodes, np.full_like(x1_nodes, z)))))
                              for z in x2_rows])

    @property
    def ordinates(self):
        return np.array([r.ordinate for r in self.rows])


def load_csv(path, tol=GROUP_TOL):
    """Read a CSV with header columns x1, x2, sigma."""
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        missing = {"x1", "x2", "sigma"} - set(reader.fieldnames or ())
        if missing:
            raise FitError(f"{path}: missing column(s) {', '.join(sorted(missing))}")
        try:
            data = [(float(r["x1"]), float(r["x2"]), float(r["sigma"])) for r in reader]
        except (TypeError, ValueError) as exc:
            raise FitError(f"{path}: line {reader.line_num}: {exc}") from exc
    if not data:
        raise FitError(f"{path}: no samples")
    a = np.array(data)
    return SampleGrid.from_points(a[:, 0], a[:, 1], a[:, 2], tol)


def _interpolant(x, y, kind):
    if kind == "cubic":
        return PchipInterpolator(x, y, extrapolate=False)
    if kind == "linear":
        return lambda t: np.interp(t, x, y)
    raise FitError(f"unknown interpolant {kind!r}; choose from {INTERPS}")


@dataclass
class Band:
    lo: float
    hi: float
    ordinate: float
    x1: np.ndarray
    sigma: np.ndarray
    interp: str
    closed_top: bool = False
    _f: object = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        self._f = _interpolant(self.x1, self.sigma, self.interp)

    def contains(self, x2):
        x2 = np.asarray(x2)
        upper = (x2 <= self.hi) if self.closed_top else (x2 < self.hi)
        return (x2 >= self.lo) & upper

    def row_value(self, x1):
        """The row interpolant f_j(x1)."""
        x1 = np.asarray(x1, dtype=float)
        if np.any(x1 < self.x1[0] - NODE_SLACK) or np.any(x1 > self.x1[-1] + NODE_SLACK):
            raise DomainError(f"x1 outside the sampled range [{self.x1[0]}, {self.x1[-1]}]")
        out = np.asarray(self._f(np.clip(x1, self.x1[0], self.x1[-1])), dtype=float)
        # return the stored samples verbatim at the nodes
        k = np.clip(np.searchsorted(self.x1, x1), 0, len(self.x1) - 1)
        hit = self.x1[k] == x1
        return np.where(hit, self.sigma[k], out)

    def alpha(self, x1, K):
        return self.row_value(x1) / (self.ordinate + K)

    def value(self, x1, x2, K):
        """(x2 + K) alpha_j(x1), without the band membership test."""
        return (np.asarray(x2) + K) * self.alpha(x1, K)


@dataclass
class PiecewiseSeparableSigma:
    K: float
    bands: List[Band]

    @property
    def x2_range(self):
        return self.bands[-1].lo, self.bands[0].hi

    def band_index(self, x2):
        """Index of the band holding ``x2`` (scalar)."""
        for k, b in enumerate(self.bands):
            if b.contains(x2):
                return k
        lo, hi = self.x2_range
        raise DomainError(f"x2 = {x2!r} is outside the fitted range [{lo}, {hi}]")

    def __call__(self, x1, x2):
        return evaluate(self, (x1, x2))

    def to_dict(self):
        return {
            "K": self.K,
            "bands": [{"lo": b.lo, "hi": b.hi, "ordinate": b.ordinate,
                       "nodes": [[float(a), float(s)] for a, s in zip(b.x1, b.sigma)],
                       "interp": b.interp} for b in self.bands],
        }

    @classmethod
    def from_dict(cls, d):
        try:
            bands = [Band(float(b["lo"]), float(b["hi"]), float(b["ordinate"]),
                          np.array([n[0] for n in b["nodes"]], dtype=float),
                          np.array([n[1] for n in b["nodes"]], dtype=float), b["interp"])
                     for b in d["bands"]]
            K = float(d["K"])
        except (KeyError, TypeError, IndexError) as exc:
            raise FitError(f"malformed fit description: {exc}") from exc
        if not bands:
            raise FitError("a fit needs at least one band")
        bands[0].closed_top = True
        return cls(K, bands)


def default_K(x2_min):
    """K = 1 - min x2, so that x2 + K >= 1 on the domain."""
    return 1.0 - float(x2_min)


def fit(grid, K=None, interp="cubic", x2_range=None):
    """Fit a piecewise separable conductivity to ``grid``.

    Parameters
    ----------
    grid : SampleGrid
    K : float, optional
        Offset in (x2 + K). Defaults to ``1 - min x2``.
    interp : {"cubic", "linear"}
        Row interpolant. "cubic" is the shape-preserving PCHIP, which keeps
        positive data positive.
    x2_range : (float, float), optional
        Vertical extent of the domain. Defaults to the span of the rows.

    Band j covers [m_j, m_{j-1}) where m_j is the midpoint between rows j
    and j+1; the top band runs up to (and includes) the domain maximum and
    the bottom band starts at the domain minimum.
    """
    if interp not in INTERPS:
        raise FitError(f"unknown interpolant {interp!r}; choose from {INTERPS}")
    ords = grid.ordinates
    lo, hi = (float(ords[-1]), float(ords[0])) if x2_range is None else map(float, x2_range)
    if lo > ords[-1] or hi < ords[0]:
        raise FitError("x2_range must contain every row ordinate")
    if K is None:
        K = default_K(lo)
    K = float(K)
    if (lo + K) * (hi + K) <= 0 or min(abs(lo + K), abs(hi + K)) < K_MARGIN:
        raise FitError(f"K = {K!r} violates x2 + K != 0 on [{lo}, {hi}] "
                       f"(need |x2 + K| >= {K_MARGIN})")
    mids = (ords[:-1] + ords[1:]) / 2.0
    tops = np.concatenate([[hi], mids])
    bottoms = np.concatenate([mids, [lo]])
    bands = [Band(float(b), float(t), r.ordinate, r.x1.copy(), r.sigma.copy(), interp)
             for r, t, b in zip(grid.rows, tops, bottoms)]
    bands[0].closed_top = True
    return PiecewiseSeparableSigma(K, bands)


def evaluate(fitted, at):
    """sigma_fit at ``at = (x1, x2)``; array arguments broadcast."""
    x1, x2 = np.broadcast_arrays(np.asarray(at[0], dtype=float), np.asarray(at[1], dtype=float))
    out = np.empty(x1.shape)
    done = np.zeros(x1.shape, dtype=bool)
    for b in fitted.bands:
        sel = b.contains(x2) & ~done
        if np.any(sel):
            out[sel] = b.value(x1[sel], x2[sel], fitted.K)
            done |= sel
    if not np.all(done):
        bad = x2[~done].ravel()[0]
        lo, hi = fitted.x2_range
        raise DomainError(f"x2 = {bad!r} is outside the fitted range [{lo}, {hi}]")
    return out[()] if out.ndim == 0 else out


def rank1_defect(values):
    """Relative rank-1 defect of a sample matrix S[i, k] = sigma(x1_i, x2_k).

    max |S[i,k] S[i',k'] - S[i,k'] S[i',k]| / max |S[i,k] S[i',k']|.
    """
    S = np.asarray(values, dtype=float)
    cross = np.abs(S[:, None, :, None] * S[None, :, None, :] - S[:, None, None, :] * S[None, :, :, None])
    scale = float(np.max(np.abs(S))) ** 2
    return float(cross.max() / scale) if scale > 0 else 0.0


def _band_samples(fitted, band, n, x2_lo, x2_hi):
    b = fitted.bands[band]
    x1 = np.linspace(b.x1[0], b.x1[-1], n)
    x2 = np.linspace(x2_lo, x2_hi, n)
    X1, X2 = np.meshgrid(x1, x2, indexing="ij")
    return X1, X2


def separability_check(fitted, band, n=8):
    """Rank-1 defect of sigma_fit on an n x n sample inside one band (relative)."""
    b = fitted.bands[band]
    top = b.hi if b.closed_top else np.nextafter(b.hi, -np.inf)
    X1, X2 = _band_samples(fitted, band, n, b.lo, top)
    return rank1_defect(evaluate(fitted, (X1, X2)))


def straddle_check(fitted, band, n=8):
    """Rank-1 defect of a sample spanning bands ``band`` and ``band + 1``."""
    upper, lower = fitted.bands[band], fitted.bands[band + 1]
    X1, X2 = _band_samples(fitted, band, n, lower.lo, np.nextafter(upper.hi, -np.inf))
    return rank1_defect(evaluate(fitted, (X1, X2)))


def band_jumps(fitted, n=101):
    """Max |sigma_upper - sigma_lower| across each internal band boundary."""
    out = []
    for upper, lower in zip(fitted.bands[:-1], fitted.bands[1:]):
        lo = max(upper.x1[0], lower.x1[0])
        hi = min(upper.x1[-1], lower.x1[-1])
        x1 = np.linspace(lo, hi, n)
        edge = upper.lo
        out.append(float(np.max(np.abs(upper.value(x1, edge, fitted.K) - lower.value(x1, edge, fitted.K)))))
    return out


def node_residual(fitted, grid):
    """Max relative error of sigma_fit at the sample nodes."""
    worst = 0.0
    for r in grid.rows:
        v = evaluate(fitted, (r.x1, np.full_like(r.x1, r.ordinate)))
        worst = max(worst, float(np.max(np.abs(v - r.sigma) / np.abs(r.sigma))))
    return worst


def separable_p(fitted, band):
    """Factors of the planar weight p = p1(x1) p2(x2) inside ``band``.

    For sigma = (x2 + K) alpha_j(x1) these are p1 = alpha_j^(-1/2) and
    p2 = (x2 + K)^(1/2), mirroring p = exp(-sigma1 x1) exp(sigma2 x2) for
    the exponential model.
    """
    b = fitted.bands[band]
    K = fitted.K
    if b.lo + K <= 0:
        raise FitError("separable_p needs x2 + K > 0 in the band")

    def p1(x1):
        return 1.0 / np.sqrt(b.alpha(x1, K))

    def p2(x2):
        return np.sqrt(np.asarray(x2, dtype=float) + K)

    return p1, p2


def save_json(fitted, path):
    with open(path, "w") as fh:
        fh.write(dumps(fitted))


def dumps(fitted):
    return json.dumps(fitted.to_dict(), indent=2, sort_keys=True) + "\n"


def load_json(path):
    with open(path) as fh:
        try:
            d = json.load(fh)
        except json.JSONDecodeError as exc:
            raise FitError(f"{path}: not valid JSON ({exc})") from exc
    return PiecewiseSeparableSigma.from_dict(d)
