"""Command-line front end: ``vekua-ohm <verb> [options]``.

Verbs: powers, fields, trace, boundary, fit, verify. Exit codes: 0 on
success, 2 for usage or configuration errors, 3 for numerical failures.
"""
import argparse
import csv
import io
import json
import sys
import warnings

import numpy as np

from . import conductivity_fit as cf
from .config import DOMAINS, ConfigError, RunConfig
from .errors import DomainError, FitError, UnsupportedClosedFormError, VekuaError
from .fields import StepRule, boundary_trace, current_density, seed_ring, trace_current
from .formal_powers import (
    FormalPowerSpec,
    GeneratingSequence,
    SeparableP,
    closed_form_power,
    formal_power_field,
)
from .svg import render_streamlines
from .verify import report, run_all

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC = 0, 2, 3


def _g(v):
    return "%.17g" % v


def _coeff(text):
    t = text.strip().lower()
    if t == "1":
        return 1
    if t in ("i", "1j", "j"):
        return 1j
    raise argparse.ArgumentTypeError("coeff must be 1 or i")


def _common():
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("common options")
    g.add_argument("--config", metavar="JSON", help="configuration file; flags override it")
    g.add_argument("--sigma1", type=float, help="exponent sigma1 of the conductivity (default 3)")
    g.add_argument("--sigma2", type=float, help="exponent sigma2 (default 1)")
    g.add_argument("--sigma3", type=float, help="exponent sigma3 (default 0)")
    g.add_argument("--fit", metavar="JSON", help="use a fitted piecewise conductivity instead")
    g.add_argument("--domain", choices=DOMAINS, help="evaluation domain (default unit-disk)")
    g.add_argument("--grid", type=int, metavar="N", help="grid resolution per axis (default 21)")
    g.add_argument("--tol", type=float, metavar="X", help="quadrature tolerance (default 1e-9)")
    g.add_argument("--seed", type=int, metavar="S", help="seed for randomized checks (default 0)")
    g.add_argument("--out", metavar="PATH", help="output file (default stdout)")
    g.add_argument("--format", choices=("csv", "json", "svg"), help="output format")
    return p


def _degree_args(p, default_m=1):
    p.add_argument("--m", type=int, default=default_m, help="formal degree")
    p.add_argument("--coeff", type=_coeff, default=1, help="coefficient: 1 or i")


def build_parser():
    common = _common()
    parser = argparse.ArgumentParser(prog="vekua-ohm", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", required=True, metavar="VERB")

    p = sub.add_parser("powers", parents=[common], help="formal powers on a grid (x1, x2, re, im)")
    _degree_args(p)

    p = sub.add_parser("fields", parents=[common], help="current densities on a grid (x1, x2, j1, j2)")
    _degree_args(p)

    p = sub.add_parser("trace", parents=[common], help="streamlines as SVG plus vertex CSV")
    _degree_args(p)
    p.add_argument("--seeds", type=int, default=12, help="number of seed points on the ring")
    p.add_argument("--radius", type=float, default=0.5, help="seed ring radius")
    p.add_argument("--rule", choices=("clamped", "two-tier"), default="clamped", help="step rule")
    p.add_argument("--step", type=float, default=0.01, help="base step length of the clamped rule")
    p.add_argument("--max-steps", type=int, default=5000)
    p.add_argument("--arrow-every", type=int, default=25, help="arrowhead spacing in vertices")

    p = sub.add_parser("boundary", parents=[common], help="potentials on the unit circle (theta, u, u_h)")
    _degree_args(p, default_m=0)
    p.add_argument("--n-theta", type=int, default=360)

    p = sub.add_parser("fit", parents=[common], help="fit a piecewise separable conductivity to a CSV")
    p.add_argument("samples", help="CSV with columns x1, x2, sigma")
    p.add_argument("--K", type=float, default=None, help="offset K in (x2 + K); default 1 - min x2")
    p.add_argument("--interp", choices=cf.INTERPS, default="cubic")
    p.add_argument("--group-tol", type=float, default=cf.GROUP_TOL)

    p = sub.add_parser("verify", parents=[common], help="run the property suites")
    return parser


def resolve_config(args):
    cfg = RunConfig.load(args.config) if args.config else RunConfig()
    return cfg.with_overrides(sigma1=args.sigma1, sigma2=args.sigma2, sigma3=args.sigma3, fit=args.fit,
                              domain=args.domain, grid=args.grid, tol_quadrature=args.tol, seed=args.seed)


def grid_points(cfg):
    """Grid nodes in lexicographic order (x1 outer), clipped to the domain."""
    g = np.linspace(-1.0, 1.0, cfg.grid)
    X1, X2 = np.meshgrid(g, g, indexing="ij")
    x1, x2 = X1.ravel(), X2.ravel()
    if cfg.domain == "unit-disk":
        keep = x1 ** 2 + x2 ** 2 <= 1.0
        x1, x2 = x1[keep], x2[keep]
    return x1, x2


def _csv_text(header, columns):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in zip(*columns):
        w.writerow([_g(v) for v in row])
    return buf.getvalue()


def _json_text(header, columns, meta=None):
    doc = {"columns": list(header), "rows": [[float(v) for v in row] for row in zip(*columns)]}
    if meta:
        doc["meta"] = meta
    return json.dumps(doc, indent=1) + "\n"


def _emit(text, path):
    if path:
        with open(path, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _table(args, header, columns, meta=None, default="csv"):
    fmt = args.format or default
    if fmt == "csv":
        return _csv_text(header, columns)
    if fmt == "json":
        return _json_text(header, columns, meta)
    raise ConfigError(f"format {fmt!r} is not available for '{args.verb}'")


def _require_exponential(cfg, verb):
    if cfg.fit:
        raise ConfigError(f"'{verb}' needs the exponential conductivity model; "
                          "fitted conductivities are supported by 'powers' only")


def _fitted_sequence(cfg):
    fitted = cf.load_json(cfg.fit)
    try:
        k = fitted.band_index(0.0)
    except DomainError as exc:
        raise ConfigError(f"the fitted domain must contain the origin ({exc})") from exc
    p1, p2 = cf.separable_p(fitted, k)
    return GeneratingSequence(SeparableP(p1, p2)), fitted.bands[k]


def cmd_powers(args, cfg):
    if args.m < 0:
        raise ConfigError("m must be non-negative")
    x1, x2 = grid_points(cfg)
    if cfg.fit:
        seq, band = _fitted_sequence(cfg)
        keep = band.contains(x2) & (x1 >= band.x1[0]) & (x1 <= band.x1[-1])
        x1, x2 = x1[keep], x2[keep]
        print(f"note: fitted conductivity, numeric formal powers in the band "
              f"[{band.lo:g}, {band.hi:g}] holding the origin", file=sys.stderr)
        z = formal_power_field(seq, FormalPowerSpec(0, args.m, args.coeff), cfg.tol_quadrature)(x1, x2)
    elif args.m <= 2:
        z = closed_form_power(args.m, args.coeff, cfg.sigma1, cfg.sigma2, (x1, x2))
    else:
        print(f"note: m = {args.m} uses numerically constructed formal powers", file=sys.stderr)
        seq = GeneratingSequence.exponential(cfg.sigma1, cfg.sigma2)
        z = formal_power_field(seq, FormalPowerSpec(0, args.m, args.coeff), cfg.tol_quadrature)(x1, x2)
    z = np.asarray(z, dtype=complex)
    return _table(args, ("x1", "x2", "re", "im"), (x1, x2, z.real, z.imag))


def cmd_fields(args, cfg):
    _require_exponential(cfg, "fields")
    x1, x2 = grid_points(cfg)
    if args.m > 2:
        print(f"note: m = {args.m} uses numerically constructed formal powers", file=sys.stderr)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        j = current_density(args.m, args.coeff, cfg.model, (x1, x2, np.zeros_like(x1)),
                            cfg.tol_quadrature)
    return _table(args, ("x1", "x2", "j1", "j2"), (x1, x2, j.j1, j.j2))


def _sidecar(path, suffix):
    stem = path[:-4] if path.lower().endswith((".svg", ".csv")) else path
    return stem + suffix


def cmd_trace(args, cfg):
    _require_exponential(cfg, "trace")
    if args.m > 2:
        raise ConfigError("streamlines are traced for m <= 2 (closed-form currents)")
    if args.seeds < 1 or not (0.0 <= args.radius <= 1.0):
        raise ConfigError("need --seeds >= 1 and 0 <= --radius <= 1")
    model = cfg.model
    rule = StepRule(args.rule, length=args.step)
    lines, rows = [], []
    for k, start in enumerate(seed_ring(args.seeds, args.radius)):
        back = trace_current(args.m, args.coeff, model, start, rule, args.max_steps, direction=-1.0)
        fwd = trace_current(args.m, args.coeff, model, start, rule, args.max_steps, direction=1.0)
        pts = np.vstack([back.points[::-1], fwd.points[1:]])
        lines.append(pts)
        for i, (a, b) in enumerate(pts):
            rows.append((k, i, a, b))
        print(f"line {k}: {len(pts)} vertices, backward {back.terminated_by}, forward {fwd.terminated_by}",
              file=sys.stderr)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(("line", "vertex", "x1", "x2"))
    for ln, i, a, b in rows:
        w.writerow((ln, i, _g(a), _g(b)))
    vertices = buf.getvalue()
    fmt = args.format or "svg"
    if fmt == "csv":
        return vertices
    if fmt != "svg":
        raise ConfigError("trace writes svg (with a vertex CSV alongside) or csv")
    svg = render_streamlines(lines, arrow_every=args.arrow_every,
                             title=f"j^({args.m}) coeff={'i' if args.coeff == 1j else '1'}")
    if args.out:
        _emit(vertices, _sidecar(args.out, ".csv"))
    return svg


def cmd_boundary(args, cfg):
    _require_exponential(cfg, "boundary")
    if args.n_theta < 3:
        raise ConfigError("--n-theta must be at least 3")
    bt = boundary_trace(args.m, args.coeff, cfg.model, args.n_theta)
    meta = {"homogeneous_scale": bt.homogeneous_scale,
            "note": "u_h values are unscaled; multiply by homogeneous_scale to co-plot"}
    cols = tuple(zip(*bt.samples))
    text = _table(args, ("theta", "u", "u_h"), cols, meta)
    if (args.format or "csv") == "csv" and args.out:
        _emit(json.dumps(meta, indent=1, sort_keys=True) + "\n", _sidecar(args.out, ".meta.json"))
    return text


def cmd_fit(args, cfg):
    if args.format not in (None, "json"):
        raise ConfigError("fit writes json")
    grid = cf.load_csv(args.samples, args.group_tol)
    fitted = cf.fit(grid, K=args.K, interp=args.interp)
    return cf.dumps(fitted)


def cmd_verify(args, cfg):
    results = run_all(cfg)
    if args.format == "json":
        text = json.dumps([{"check": r.name, "value": r.value, "limit": r.limit, "passed": r.passed}
                           for r in results], indent=1) + "\n"
    elif args.format in (None, "csv"):
        text = report(results)
    else:
        raise ConfigError("verify prints a table or json")
    return text, all(r.passed for r in results)


COMMANDS = {"powers": cmd_powers, "fields": cmd_fields, "trace": cmd_trace,
            "boundary": cmd_boundary, "fit": cmd_fit, "verify": cmd_verify}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = resolve_config(args)
        out = COMMANDS[args.verb](args, cfg)
    except (ConfigError, FitError, UnsupportedClosedFormError, OSError) as exc:
        print(f"vekua-ohm {args.verb}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (VekuaError, FloatingPointError, ValueError) as exc:
        print(f"vekua-ohm {args.verb}: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    ok = True
    if isinstance(out, tuple):
        out, ok = out
    _emit(out, args.out)
    return EXIT_OK if ok else EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
