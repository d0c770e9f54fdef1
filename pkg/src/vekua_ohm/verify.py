"""Property suites behind the ``verify`` command.

Every check returns a measured value and the limit it must stay below;
the report is deterministic for a given configuration and seed.
"""
from dataclasses import dataclass
from typing import Callable, List

import numpy as np

from . import conductivity_fit as cf
from .config import RunConfig
from .fields import (
    StepRule,
    current_density,
    divergence_residual,
    gradient_consistency,
    homogeneous_current,
    potential,
    seed_ring,
    trace_current,
)
from .formal_powers import (
    FormalPowerSpec,
    GeneratingSequence,
    closed_form_power,
    formal_power,
    path_independence_check,
)
from .pseudoanalytic import characteristic_coefficients, vekua_residual
from .quadrature import Path
from .quaternion import ExpSigmaModel, bers_set, gol04_residual, lift_planar_solution, ohm_residual

COEFFS = (1, 1j)


@dataclass(frozen=True)
class CheckResult:
    name: str
    value: float
    limit: float

    @property
    def passed(self):
        return bool(np.isfinite(self.value) and self.value < self.limit)

    def line(self):
        flag = "PASS" if self.passed else "FAIL"
        return f"{self.name:<34} {self.value:10.3e}  < {self.limit:8.1e}  {flag}"


def disk_grid(n, closed=True):
    g = np.linspace(-1.0, 1.0, n)
    X1, X2 = np.meshgrid(g, g, indexing="ij")
    r2 = X1 ** 2 + X2 ** 2
    keep = r2 <= 1.0 if closed else r2 < 1.0
    return X1[keep], X2[keep]


def random_disk_points(rng, n, radius=1.0):
    r = radius * np.sqrt(rng.uniform(0.0, 1.0, n))
    th = rng.uniform(0.0, 2 * np.pi, n)
    return r * np.cos(th), r * np.sin(th)


def _power_field(m, c, s1, s2):
    return lambda x1, x2: closed_form_power(m, c, s1, s2, (x1, x2))


def check_vekua(cfg, rng, n=41):
    seq = GeneratingSequence.exponential(cfg.sigma1, cfg.sigma2)
    pair = seq.pair_at(0)
    X1, X2 = disk_grid(n)
    worst = max(float(np.max(np.abs(vekua_residual(_power_field(m, c, cfg.sigma1, cfg.sigma2), pair, (X1, X2)))))
                for m in range(3) for c in COEFFS)
    return [CheckResult(f"vekua residual {n}x{n}", worst, cfg.tol_residual)]


def check_oracle(cfg, rng, n=10):
    seq = GeneratingSequence.exponential(cfg.sigma1, cfg.sigma2)
    X1, X2 = random_disk_points(rng, n)
    out = []
    for m, limit in ((1, 1e-6), (2, 1e-5)):
        worst = 0.0
        for c in COEFFS:
            for a, b in zip(X1, X2):
                num = formal_power(seq, FormalPowerSpec(0, m, c), (a, b), cfg.tol_quadrature)
                ref = closed_form_power(m, c, cfg.sigma1, cfg.sigma2, (a, b))
                worst = max(worst, abs(num - ref) / abs(ref))
        out.append(CheckResult(f"numeric vs closed power m={m}", worst, limit))
    return out


def check_asymptotic(cfg, rng):
    th = 2 * np.pi * np.arange(8) / 8
    worst = 0.0
    for r in (1e-1, 1e-2, 1e-3, 1e-4):
        x1, x2 = r * np.cos(th), r * np.sin(th)
        z = x2 + 1j * x1
        for m in range(3):
            for c in COEFFS:
                diff = closed_form_power(m, c, cfg.sigma1, cfg.sigma2, (x1, x2)) - c * z ** m
                worst = max(worst, float(np.max(np.abs(diff) / r ** (m + 1))))
    return [CheckResult("asymptotic constant", worst, 100.0)]


def check_homogeneous(cfg, rng, n=20, eps=1e-12):
    x1, x2 = random_disk_points(rng, n)
    z = x2 + 1j * x1
    model = ExpSigmaModel(eps, eps, eps)
    pw = cu = 0.0
    for m in range(3):
        for c in COEFFS:
            pw = max(pw, float(np.max(np.abs(closed_form_power(m, c, eps, eps, (x1, x2)) - c * z ** m))))
            j = current_density(m, c, model, (x1, x2, np.zeros_like(x1)))
            h = homogeneous_current(m, c, (x1, x2))
            cu = max(cu, float(np.max(np.abs(np.array(j) - np.array(h)))))
    return [CheckResult("homogeneous limit powers", pw, 1e-8),
            CheckResult("homogeneous limit currents", cu, 1e-6)]


def check_potentials(cfg, rng, n=21):
    model = cfg.model
    X1, X2 = disk_grid(n, closed=False)
    gc = dv = 0.0
    for m in (0, 1):
        for c in COEFFS:
            gc = max(gc, float(np.max(gradient_consistency(m, c, model, (X1, X2)))))
            dv = max(dv, float(np.max(np.abs(divergence_residual(m, c, model, (X1, X2))))))
    s1, s2 = model.sigma1, model.sigma2
    u0 = lambda a, b: np.exp(-2 * s1 * a) / (2 * s1)
    u1i = lambda a, b: (a / (2 * s1) - b / (2 * s2) + np.exp(-2 * s1 * a) / (4 * s1 ** 2)
                        - np.exp(-2 * s2 * b) / (4 * s2 ** 2))
    spot = max(float(np.max(np.abs(potential(0, 1, model, (X1, X2)) - u0(X1, X2)) / np.abs(u0(X1, X2)))),
               float(np.max(np.abs(potential(1, 1j, model, (X1, X2)) - u1i(X1, X2)))))
    return [CheckResult(f"j + sigma grad u {n}x{n}", gc, 1e-6),
            CheckResult(f"div(sigma grad u) {n}x{n}", dv, 1e-5),
            CheckResult("potential spot formulas", spot, 1e-12)]


def check_quaternion(cfg, rng, n=9):
    g = np.linspace(-1.0, 1.0, n)
    at = np.meshgrid(g, g, g, indexing="ij")
    worst = 0.0
    for s in ((3.0, 1.0, 0.0), (1.0, 1.0, 1.0), (0.0, 0.0, 0.0)):
        model = ExpSigmaModel(*s)
        for E in bers_set(model):
            worst = max(worst, float(np.max(np.abs(ohm_residual(E, model, at)))))
    model = ExpSigmaModel(cfg.sigma1, cfg.sigma2, 0.0)
    lift = 0.0
    for m in range(3):
        for c in COEFFS:
            L = lift_planar_solution(_power_field(m, c, cfg.sigma1, cfg.sigma2), model)
            res = gol04_residual(L.phi1, L.phi2, model, at)
            lift = max(lift, max(float(np.max(np.abs(r))) for r in res))
    return [CheckResult(f"quaternionic Ohm residual {n}^3", worst, 1e-6),
            CheckResult("lifted planar solution", lift, 1e-5)]


def check_sequence(cfg, rng, n=100):
    seq = GeneratingSequence.exponential(cfg.sigma1, cfg.sigma2)
    x1, x2 = random_disk_points(rng, n)
    period = succ = 0.0
    for m in range(4):
        P, Q = seq.pair_at(m), seq.pair_at(m + 2)
        period = max(period, float(np.max(np.abs(P.F(x1, x2) - Q.F(x1, x2)))),
                     float(np.max(np.abs(P.G(x1, x2) - Q.G(x1, x2)))))
        c0 = characteristic_coefficients(seq.pair_at(m), (x1, x2))
        c1 = characteristic_coefficients(seq.pair_at(m + 1), (x1, x2))
        succ = max(succ, float(np.max(np.abs(c1.a - c0.a))), float(np.max(np.abs(c1.B + c0.b))))
    return [CheckResult("sequence period 2", period, 1e-10),
            CheckResult("successor condition", succ, 1e-6)]


def check_path_independence(cfg, rng, loops=3):
    seq = GeneratingSequence.exponential(cfg.sigma1, cfg.sigma2)
    # Z_0^(m) is (F0, G0)-pseudoanalytic, hence integrable for the predecessor pair (F1, G1)
    pair = seq.pair_at(1)
    worst = 0.0
    for _ in range(loops):
        cx, cy = random_disk_points(rng, 1, 0.5)
        r = rng.uniform(0.05, 0.4)
        loop = Path.circle((cx[0], cy[0]), r, 32)
        for m in range(3):
            for c in COEFFS:
                worst = max(worst, path_independence_check(_power_field(m, c, cfg.sigma1, cfg.sigma2), pair,
                                                           loop, cfg.tol_quadrature))
    return [CheckResult("closed-loop (F,G)-integral", worst, 1e-8)]


def check_streamlines(cfg, rng, seeds=8):
    model = ExpSigmaModel(cfg.sigma1, cfg.sigma2, 0.0)
    inside = rule_err = 0.0
    for rule in (StepRule("clamped"), StepRule("two-tier")):
        for start in seed_ring(seeds, 0.5):
            for d in (1.0, -1.0):
                s = trace_current(1, 1, model, start, rule, max_steps=2000, direction=d)
                P = s.points
                r = np.hypot(P[:, 0], P[:, 1])
                inside = max(inside, float(np.max(r) - 1.0), 0.0)
                n_regular = len(P) - 1 - (s.terminated_by == "boundary-exit")
                for k in range(n_regular):
                    step = float(np.hypot(*(P[k + 1] - P[k])))
                    sig = float(model.conductivity(*P[k]))
                    if rule.kind == "clamped":
                        want = rule.displacement(sig, 0.0, 1.0)
                    else:
                        j = current_density(1, 1, model, (P[k][0], P[k][1]))
                        want = rule.displacement(sig, float(np.hypot(j.j1, j.j2)), 1.0)
                    rule_err = max(rule_err, abs(step - want) / want)
    return [CheckResult("streamline stays in disk", inside, 1e-12),
            CheckResult("streamline step rule", rule_err, 1e-9)]


def check_fit(cfg, rng, n=5):
    src = lambda a, b: np.exp(2 * a + 2 * b)
    x = np.linspace(-1.0, 1.0, n)
    grid = cf.SampleGrid.from_function(src, x, x)
    out = []
    for interp in cf.INTERPS:
        f = cf.fit(grid, K=3.0, interp=interp)
        out.append(CheckResult(f"fit node exactness ({interp})", cf.node_residual(f, grid), 1e-12))
        out.append(CheckResult(f"fit band rank-1 ({interp})",
                               max(cf.separability_check(f, k) for k in range(len(f.bands))), 1e-12))
    f = cf.fit(grid, K=3.0)
    x2 = rng.uniform(-1.0, 1.0, 1000)
    bad = sum(1 for v in x2 if sum(bool(b.contains(v)) for b in f.bands) != 1)
    out.append(CheckResult("fit bands partition", float(bad), 0.5))
    return out


SUITES: List[Callable] = [
    check_vekua, check_oracle, check_asymptotic, check_homogeneous, check_potentials,
    check_quaternion, check_sequence, check_path_independence, check_streamlines, check_fit,
]


def run_all(cfg=None, suites=None):
    """Run every suite with a fresh generator seeded from ``cfg.seed``."""
    cfg = cfg or RunConfig()
    rng = np.random.default_rng(cfg.seed)
    results = []
    for suite in suites or SUITES:
        results.extend(suite(cfg, rng))
    return results


def report(results):
    lines = [f"{'check':<34} {'value':>10}  {'limit':>10}  result"]
    lines += [r.line() for r in results]
    n_fail = sum(not r.passed for r in results)
    lines.append(f"{len(results) - n_fail}/{len(results)} checks passed")
    return "\n".join(lines) + "\n"
