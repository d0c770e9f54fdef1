"""Acceptance criteria 1-9, one PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py`` or ``python tests/test_acceptance.py``;
the lines are collected in an "acceptance criteria" section of the terminal
summary.
"""
import subprocess
import sys
import time

import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES
from vekua_ohm import conductivity_fit as cf
from vekua_ohm.fields import (
    current_density,
    divergence_residual,
    gradient_consistency,
    homogeneous_current,
    potential,
)
from vekua_ohm.formal_powers import FormalPowerSpec, GeneratingSequence, closed_form_power, formal_power
from vekua_ohm.pseudoanalytic import characteristic_coefficients, vekua_residual
from vekua_ohm.quaternion import ExpSigmaModel, bers_set, gol04_residual, lift_planar_solution, ohm_residual

S1, S2 = 3.0, 1.0
COEFFS = (1, 1j)
SEED = 12345


def announce(number, title, ok, detail):
    line = f"[criterion {number}] {'PASS' if ok else 'FAIL'}  {title}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return line


def disk_grid(n, strict=False):
    g = np.linspace(-1.0, 1.0, n)
    X1, X2 = np.meshgrid(g, g, indexing="ij")
    r2 = X1 ** 2 + X2 ** 2
    keep = r2 < 1.0 if strict else r2 <= 1.0
    return X1[keep], X2[keep]


def disk_points(rng, n):
    r = np.sqrt(rng.uniform(0, 1, n))
    t = rng.uniform(0, 2 * np.pi, n)
    return r * np.cos(t), r * np.sin(t)


def power(m, c, s1=S1, s2=S2):
    return lambda a, b: closed_form_power(m, c, s1, s2, (a, b))


def test_criterion_1_vekua_residual():
    t0 = time.perf_counter()
    pair = GeneratingSequence.exponential(S1, S2).pair_at(0)
    X1, X2 = disk_grid(41)
    worst = max(float(np.max(np.abs(vekua_residual(power(m, c), pair, (X1, X2)))))
                for m in range(3) for c in COEFFS)
    dt = time.perf_counter() - t0
    ok = worst < 1e-6 and dt < 10
    announce(1, "Vekua residual, 41x41 disk grid", ok, f"max {worst:.2e} (< 1e-6), {dt:.2f} s (< 10 s)")
    assert ok


def test_criterion_2_numeric_vs_closed():
    t0 = time.perf_counter()
    seq = GeneratingSequence.exponential(S1, S2)
    x1, x2 = disk_points(np.random.default_rng(SEED), 50)
    err = {1: 0.0, 2: 0.0}
    for m in (1, 2):
        for c in COEFFS:
            for a, b in zip(x1, x2):
                num = formal_power(seq, FormalPowerSpec(0, m, c), (a, b), tol=1e-9)
                ref = closed_form_power(m, c, S1, S2, (a, b))
                err[m] = max(err[m], abs(num - ref) / abs(ref))
    dt = time.perf_counter() - t0
    ok = err[1] < 1e-6 and err[2] < 1e-5 and dt < 60
    announce(2, "numeric formal powers vs closed forms, 50 points", ok,
             f"rel m=1 {err[1]:.2e} (< 1e-6), m=2 {err[2]:.2e} (< 1e-5), {dt:.2f} s (< 60 s)")
    assert ok


def test_criterion_3_asymptotics():
    th = 2 * np.pi * np.arange(8) / 8
    worst = 0.0
    for r in (1e-1, 1e-2, 1e-3, 1e-4):
        x1, x2 = r * np.cos(th), r * np.sin(th)
        z = x2 + 1j * x1
        for m in range(3):
            for c in COEFFS:
                d = closed_form_power(m, c, S1, S2, (x1, x2)) - c * z ** m
                worst = max(worst, float(np.max(np.abs(d) / r ** (m + 1))))
    ok = worst < 100
    announce(3, "asymptotic constant |Z - a zeta^m| / |zeta|^(m+1)", ok, f"max {worst:.3f} (< 100)")
    assert ok


def test_criterion_4_homogeneous_reduction():
    eps = 1e-12
    x1, x2 = disk_points(np.random.default_rng(SEED + 1), 20)
    z = x2 + 1j * x1
    model = ExpSigmaModel(eps, eps, eps)
    pw = cu = 0.0
    for m in range(3):
        for c in COEFFS:
            pw = max(pw, float(np.max(np.abs(closed_form_power(m, c, eps, eps, (x1, x2)) - c * z ** m))))
            j = np.array(current_density(m, c, model, (x1, x2, 0 * x1)))
            cu = max(cu, float(np.max(np.abs(j - np.array(homogeneous_current(m, c, (x1, x2)))))))
    ok = pw < 1e-8 and cu < 1e-6
    announce(4, "homogeneous reduction at sigma_k = 1e-12", ok,
             f"powers {pw:.2e} (< 1e-8), currents {cu:.2e} (< 1e-6)")
    assert ok


def test_criterion_5_current_potential_consistency():
    model = ExpSigmaModel(S1, S2, 0.0)
    X1, X2 = disk_grid(21, strict=True)
    gc = dv = 0.0
    for m in (0, 1):
        for c in COEFFS:
            gc = max(gc, float(np.max(gradient_consistency(m, c, model, (X1, X2)))))
            dv = max(dv, float(np.max(np.abs(divergence_residual(m, c, model, (X1, X2))))))
    u0 = np.exp(-2 * S1 * X1) / (2 * S1)
    u1 = X1 / (2 * S1) - X2 / (2 * S2) + np.exp(-2 * S1 * X1) / (4 * S1 ** 2) - np.exp(-2 * S2 * X2) / (4 * S2 ** 2)
    spot = bool(np.all(potential(0, 1, model, (X1, X2)) == u0)
                and np.allclose(potential(1, 1j, model, (X1, X2)), u1, rtol=1e-15, atol=1e-16))
    ok = gc < 1e-6 and dv < 1e-5 and spot
    announce(5, "j = -sigma grad u and div(sigma grad u) = 0, 21x21 interior", ok,
             f"consistency {gc:.2e} (< 1e-6), divergence {dv:.2e} (< 1e-5), spot formulas {spot}")
    assert ok


def test_criterion_6_quaternionic_suite():
    g = np.linspace(-1, 1, 9)
    at = np.meshgrid(g, g, g, indexing="ij")
    worst = 0.0
    for s in ((3, 1, 0), (1, 1, 1), (0, 0, 0)):
        model = ExpSigmaModel(*s)
        for E in bers_set(model):
            worst = max(worst, float(np.max(np.abs(ohm_residual(E, model, at)))))
    model = ExpSigmaModel(S1, S2, 0.0)
    lift = 0.0
    for m in range(3):
        for c in COEFFS:
            L = lift_planar_solution(power(m, c), model)
            lift = max(lift, max(float(np.max(np.abs(r))) for r in gol04_residual(L.phi1, L.phi2, model, at)))
    ok = worst < 1e-6 and lift < 1e-5
    announce(6, "quaternionic Ohm law, 9^3 grid", ok,
             f"Bers set residual {worst:.2e} (< 1e-6), lifted solutions {lift:.2e} (< 1e-5)")
    assert ok


def test_criterion_7_generating_sequence():
    seq = GeneratingSequence.exponential(S1, S2)
    x1, x2 = disk_points(np.random.default_rng(SEED + 2), 100)
    period = succ = 0.0
    for m in range(4):
        P, Q = seq.pair_at(m), seq.pair_at(m + 2)
        period = max(period, float(np.max(np.abs(P.F(x1, x2) - Q.F(x1, x2)))),
                     float(np.max(np.abs(P.G(x1, x2) - Q.G(x1, x2)))))
        c0 = characteristic_coefficients(seq.pair_at(m), (x1, x2))
        c1 = characteristic_coefficients(seq.pair_at(m + 1), (x1, x2))
        succ = max(succ, float(np.max(np.abs(c1.a - c0.a))), float(np.max(np.abs(c1.B + c0.b))))
    ok = period < 1e-10 and succ < 1e-6
    announce(7, "generating sequence, 100 points", ok,
             f"period-2 {period:.2e} (< 1e-10), successor a1 = a, B1 = -b {succ:.2e} (< 1e-6, FD)")
    assert ok


def test_criterion_8_conductivity_fit():
    x = np.linspace(-1, 1, 5)
    grid = cf.SampleGrid.from_function(lambda a, b: np.exp(2 * a + 2 * b), x, x)
    node = rank = 0.0
    for interp in cf.INTERPS:
        f = cf.fit(grid, K=3.0, interp=interp)
        node = max(node, cf.node_residual(f, grid))
        rank = max(rank, max(cf.separability_check(f, k) for k in range(len(f.bands))))
    ok = node < 1e-12 and rank < 1e-12
    announce(8, "piecewise separable fit, 5x5 samples of exp(2x1+2x2)", ok,
             f"node error {node:.2e} (< 1e-12 rel), band rank-1 defect {rank:.2e} (< 1e-12 rel)")
    assert ok


EMISSIONS = [
    ["verify"],
    ["powers", "--m", "2", "--coeff", "i", "--grid", "31"],
    ["powers", "--m", "3", "--grid", "5"],
    ["fields", "--m", "1", "--grid", "31"],
    ["trace", "--m", "1", "--coeff", "i", "--seeds", "8"],
    ["boundary", "--m", "1", "--n-theta", "90"],
    ["fit", "{samples}"],
]


def _run_cli(args, out):
    cmd = [sys.executable, "-m", "vekua_ohm", *args, "--seed", "7", "--out", str(out)]
    res = subprocess.run(cmd, capture_output=True)
    assert res.returncode == 0, res.stderr.decode()
    files = sorted(out.parent.glob(out.stem + "*"))
    return {p.name.replace(out.stem, ""): p.read_bytes() for p in files} | {"stdout": res.stdout}


def test_criterion_9_determinism(tmp_path):
    samples = tmp_path / "samples.csv"
    x = np.linspace(-1, 1, 5)
    samples.write_text("x1,x2,sigma\n" + "".join(f"{a!r},{b!r},{float(np.exp(2 * a + 2 * b))!r}\n"
                                                for a in x.tolist() for b in x.tolist()))
    diffs = []
    for k, args in enumerate(EMISSIONS):
        args = [a.format(samples=samples) for a in args]
        outs = []
        for rep in range(2):
            d = tmp_path / f"run{rep}"
            d.mkdir(exist_ok=True)
            outs.append(_run_cli(args, d / f"out{k}.dat"))
        if outs[0] != outs[1]:
            diffs.append(args[0])
    ok = not diffs
    announce(9, "byte-identical outputs across two runs", ok,
             f"{len(EMISSIONS)} commands compared" + (f", differing: {diffs}" if diffs else ""))
    assert ok


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
