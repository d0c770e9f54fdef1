"""Compare the compiled and pure-Python kernel backends.

Usage: python benchmarks/bench_kernels.py [--repeat N] [--grid N]
"""
import argparse
import importlib
import timeit

import numpy as np

from vekua_ohm import _kernels_py


def _compiled():
    try:
        return importlib.import_module("vekua_ohm._kernels")
    except ImportError:
        return None


def cases(k, grid):
    g = np.linspace(-1.0, 1.0, grid)
    X1, X2 = np.meshgrid(g, g, indexing="ij")
    X3 = np.zeros_like(X1)
    return {
        f"closed-form Z^(2) on {grid}x{grid}": lambda: k.closed_form_power(2, True, 3.0, 1.0, X1, X2),
        f"currents j^(1) on {grid}x{grid}": lambda: k.exp_current(1, False, 3.0, 1.0, 0.0, X1, X2, X3),
        "trace 12 streamlines (clamped)": lambda: [
            k.trace(1, False, 3.0, 1.0, 0.5 * np.cos(t), 0.5 * np.sin(t), 1.0, k.RULE_CLAMPED,
                    0.01, 0.01, 10.0, 1.0, 1e-4, 0.1, 5000, 1e-12)
            for t in np.linspace(0, 2 * np.pi, 12, endpoint=False)],
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--grid", type=int, default=201)
    args = ap.parse_args(argv)
    compiled = _compiled()
    if compiled is None:
        print("compiled backend not built; timing the pure-Python backend only")
    py_cases = cases(_kernels_py, args.grid)
    c_cases = cases(compiled, args.grid) if compiled else {}
    print(f"{'kernel':<34} {'python [ms]':>12} {'compiled [ms]':>14} {'speedup':>8}")
    for name, fn in py_cases.items():
        tp = min(timeit.repeat(fn, number=1, repeat=args.repeat)) * 1e3
        if name in c_cases:
            tc = min(timeit.repeat(c_cases[name], number=1, repeat=args.repeat)) * 1e3
            print(f"{name:<34} {tp:12.2f} {tc:14.3f} {tp / tc:7.1f}x")
        else:
            print(f"{name:<34} {tp:12.2f} {'-':>14} {'-':>8}")


if __name__ == "__main__":
    main()
