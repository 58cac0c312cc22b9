"""
Command-line front end.

Exit codes: 0 success, 2 usage error (bad arguments or malformed spec),
3 domain error (for example no closed involute). Errors are reported on
stderr as a single ``error: <kind>: <message>`` line.
"""

import argparse
import csv
import io
import json
import sys

import numpy as np

from . import __version__
from .dynamics import (
    TorusState,
    equidistribution_stat,
    iterate,
    rotation_angles,
    shape_distance,
    torus_orbit,
)
from .errors import SkewCurveError
from .gutkin import fattened_hypocycloid, gutkin_roots, verify_invariant
from .oracle import oracle_deviation, skew_evolute_numeric
from .specfile import (
    OpenCurve,
    SpecError,
    dumps,
    expand,
    fmt,
    load_spec,
    support_to_json,
    write_atomic,
)
from .support import (
    PlaneCurveSamples,
    amplitude_array,
    curvature_radius,
    curve_point,
    cusp_locations,
    sample_curve,
    signed_area,
    signed_length,
    radius_energy,
    steiner_point,
)
from .svg import Layer, render
from .transforms import m_map, skew_evolute, skew_involute

EXIT_USAGE = 2
EXIT_DOMAIN = 3
DEFAULT_SAMPLES = 720
MAX_DEFAULT_FACTORS = 4


class UsageError(Exception):
    pass


# -- helpers -------------------------------------------------------------------

def _load(path):
    try:
        return expand(load_spec(path))
    except SpecError as exc:
        raise UsageError(str(exc)) from None


def _load_fourier(path, command):
    curve = _load(path)
    if isinstance(curve, OpenCurve):
        raise UsageError(f"{command} needs a closed (Fourier) curve, got {curve.name!r}")
    return curve


def _emit(text, path):
    if path:
        write_atomic(path, text)
    else:
        sys.stdout.write(text)


def _csv_text(header, rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt(v) if not isinstance(v, str) else v for v in row])
    return buf.getvalue()


def _fourier_layer(p, n, label=""):
    samples = sample_curve(p, n)
    r = curvature_radius(p, samples.params)
    markers = []
    for j in np.flatnonzero(samples.cusp_flags):
        j2 = (j + 1) % n
        phi0 = samples.params[j]
        phi1 = samples.params[j2] if j2 else samples.params[0] + 2 * np.pi
        r0, r1 = r[j], r[j2]
        # linear interpolation of the zero of the curvature radius
        w = r0 / (r0 - r1) if r0 != r1 else 0.5
        markers.append(curve_point(p, phi0 + w * (phi1 - phi0)))
    return Layer(samples.points, True, np.array(markers).reshape(-1, 2), label)


def _samples_layer(samples, label=""):
    pts = samples.points
    markers = []
    for j in np.flatnonzero(samples.cusp_flags):
        a, b = pts[j], pts[(j + 1) % len(samples)]
        markers.append(0.5 * (a + b))
    return Layer(pts, samples.closed, np.array(markers).reshape(-1, 2), label)


def _open_samples(curve, n):
    t = curve.curve._grid(n)
    return PlaneCurveSamples(curve.curve.position(t), t, np.zeros(n - 1, dtype=bool), closed=False)


def _samples_json(samples, **extra):
    data = {"kind": "samples"}
    data.update(extra)
    data["closed"] = samples.closed
    data["params"] = samples.params
    data["points"] = [list(p) for p in samples.points]
    data["cusp_flags"] = [bool(f) for f in samples.cusp_flags]
    return dumps(data) + "\n"


def _layer_from_file(path, n):
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None
    if isinstance(data, dict) and data.get("kind") == "samples":
        pts = np.array([[np.nan if v is None else v for v in p] for p in data["points"]], float)
        flags = np.array(data["cusp_flags"], dtype=bool)
        samples = PlaneCurveSamples(pts, data["params"], flags, closed=bool(data["closed"]))
        return _samples_layer(samples, path)
    curve = _load(path)
    if isinstance(curve, OpenCurve):
        return _samples_layer(_open_samples(curve, n), path)
    return _fourier_layer(curve, n, path)


# -- subcommands ---------------------------------------------------------------

def cmd_evolute(args):
    curve = _load(args.input)
    if isinstance(curve, OpenCurve):
        image = skew_evolute_numeric(curve.curve, args.alpha, args.samples)
        _emit(_samples_json(image, name=curve.name, alpha=args.alpha), args.output)
        if args.svg:
            layers = [_samples_layer(_open_samples(curve, args.samples), "input"),
                      _samples_layer(image, "skew evolute")]
            write_atomic(args.svg, render(layers))
        return 0
    q = skew_evolute(curve, args.alpha)
    _emit(support_to_json(q), args.output)
    if args.svg:
        layers = [_fourier_layer(curve, args.samples, "input"),
                  _fourier_layer(q, args.samples, "skew evolute")]
        write_atomic(args.svg, render(layers))
    return 0


def cmd_involute(args):
    q = _load_fourier(args.input, "involute")
    p, free = skew_involute(q, args.alpha, full_output=True)
    extra = {"free_constant": True} if free else {}
    _emit(support_to_json(p, **extra), args.output)
    if args.svg:
        layers = [_fourier_layer(q, args.samples, "input"),
                  _fourier_layer(p, args.samples, "skew involute")]
        write_atomic(args.svg, render(layers))
    return 0


def _invariant_row(step, p, degree):
    st = steiner_point(p)
    return [step, signed_length(p), signed_area(p), radius_energy(p), st[0], st[1],
            *amplitude_array(p, degree)]


def cmd_map(args):
    p = _load_fourier(args.input, "map")
    degree = p.degree
    rows = [_invariant_row(0, p, degree)]
    for step in range(1, args.steps + 1):
        p = m_map(p, args.alpha)
        rows.append(_invariant_row(step, p, degree))
    header = ["step", "L", "A", "R", "steiner_x", "steiner_y"]
    header += [f"amp_{k}" for k in range(degree + 1)]
    table = _csv_text(header, rows)
    if args.csv:
        write_atomic(args.csv, table)
    else:
        sys.stdout.write(table)
    if args.output:
        write_atomic(args.output, support_to_json(p))
    return 0


def cmd_iterate(args):
    p = _load_fourier(args.input, "iterate")
    trace = iterate(p, args.alpha, args.steps, args.mode)
    amps = trace.amplitude_table()
    present = np.flatnonzero(amps[0] > 0)
    # shape target: top harmonic for evolutes, lowest for involutes
    target = int(present[0]) if args.mode == "involute" else int(present[-1])
    ks = list(range(amps.shape[1]))
    header = ["step", "dominant_k"] + [f"amp_{k}" for k in ks] + ["cusp_count", "shape_distance"]
    rows = []
    for step, (q, row) in enumerate(zip(trace.supports, amps)):
        cusps = trace.cusp_counts[step]
        dist = shape_distance(q, target) if row[target] > 0 else float("nan")
        rows.append([step, int(np.argmax(row)), *row, "" if cusps is None else cusps, dist])
    table = _csv_text(header, rows)
    if args.csv:
        write_atomic(args.csv, table)
    else:
        sys.stdout.write(table)
    if args.output:
        write_atomic(args.output, support_to_json(trace.final))
    return 0


def cmd_cusps(args):
    p = _load_fourier(args.input, "cusps")
    locs = cusp_locations(p)
    sys.stdout.write(dumps({"cusp_count": int(locs.size), "cusps": locs}) + "\n")
    return 0


def cmd_gutkin(args):
    roots = gutkin_roots(args.k)
    out = []
    for r in roots:
        entry = {"alpha": r.alpha, "residual": r.residual, "degenerate": r.degenerate}
        if args.verify and not r.degenerate:
            p = fattened_hypocycloid(args.k, args.c)
            entry["invariant_residual"] = verify_invariant(p, r.alpha)
        out.append(entry)
    sys.stdout.write(dumps({"k": args.k, "roots": out}) + "\n")
    return 0


def cmd_orbit(args):
    p = _load_fourier(args.input, "orbit")
    state = TorusState.from_support(p)
    orbit = torus_orbit(state, args.alpha, args.steps)
    ks = list(state.phases)
    header = ["step"] + [f"theta_{k}" for k in ks]
    rows = [[j] + [s.phases[k] for k in ks] for j, s in enumerate(orbit)]
    table = _csv_text(header, rows)
    if args.csv:
        write_atomic(args.csv, table)
    else:
        sys.stdout.write(table)
    if args.factors:
        factors = [int(k) for k in args.factors.split(",")]
    else:
        angles = rotation_angles(state, args.alpha)
        factors = [k for k in ks if angles[k] != 0.0][:MAX_DEFAULT_FACTORS]
    stat = equidistribution_stat(orbit, factors) if len(orbit) >= 16 else float("nan")
    sys.stderr.write(f"equidistribution_stat={fmt(stat)} factors={','.join(map(str, factors))}\n")
    return 0


def cmd_render(args):
    layers = [_layer_from_file(args.input, args.samples)]
    layers += [_layer_from_file(path, args.samples) for path in args.overlay or []]
    write_atomic(args.svg, render(layers))
    return 0


def cmd_oracle(args):
    p = _load_fourier(args.input, "oracle")
    sys.stdout.write(fmt(oracle_deviation(p, args.alpha, args.samples)) + "\n")
    return 0


# -- parser ----------------------------------------------------------------------

def build_parser():
    parser = argparse.ArgumentParser(
        prog="skewcurves", description="Skew evolutes and involutes of hedgehogs."
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, alpha=True, output=True, svg=False):
        if alpha:
            p.add_argument("--alpha", type=float, required=True, help="angle in radians")
        p.add_argument("--input", "--spec", dest="input", required=True, help="curve spec JSON")
        if output:
            p.add_argument("--output", help="output file (default: stdout)")
        if svg:
            p.add_argument("--svg", help="also write an SVG figure")
        p.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)

    p = sub.add_parser("evolute", help="skew evolute")
    common(p, svg=True)
    p.set_defaults(func=cmd_evolute)

    p = sub.add_parser("involute", help="closed skew involute")
    common(p, svg=True)
    p.set_defaults(func=cmd_involute)

    p = sub.add_parser("map", help="iterate M_alpha and tabulate its invariants")
    common(p)
    p.add_argument("--steps", type=int, default=1)
    p.add_argument("--csv", help="invariant table (default: stdout)")
    p.set_defaults(func=cmd_map)

    p = sub.add_parser("iterate", help="iterate skew evolutes or involutes")
    common(p)
    p.add_argument("--mode", choices=["evolute", "involute", "m_map"], default="evolute")
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--csv", help="trace table (default: stdout)")
    p.set_defaults(func=cmd_iterate)

    p = sub.add_parser("cusps", help="count and locate cusps")
    common(p, alpha=False, output=False)
    p.set_defaults(func=cmd_cusps)

    p = sub.add_parser("gutkin", help="roots of tan(k a) = k tan(a)")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--verify", action="store_true", help="check a fattened hypocycloid")
    p.add_argument("--c", type=float, help="constant added to cos(k phi) for --verify")
    p.set_defaults(func=cmd_gutkin)

    p = sub.add_parser("orbit", help="torus orbit of M_alpha")
    common(p, output=False)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--csv", help="phase table (default: stdout)")
    p.add_argument("--factors", help="comma-separated harmonics for the Weyl statistic")
    p.set_defaults(func=cmd_orbit)

    p = sub.add_parser("render", help="draw curves to SVG")
    common(p, alpha=False, output=False)
    p.add_argument("--svg", required=True)
    p.add_argument("--overlay", action="append", help="extra spec or samples JSON (repeatable)")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("oracle", help="envelope vs spectral skew evolute")
    common(p, output=False)
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "gutkin" and args.verify and args.c is None:
            raise UsageError("--verify needs --c")
        if getattr(args, "steps", 1) < 1 or getattr(args, "samples", 16) < 8:
            raise UsageError("--steps must be >= 1 and --samples >= 8")
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"error: usage: {exc}\n")
        return EXIT_USAGE
    except (SkewCurveError, ValueError) as exc:
        sys.stderr.write(f"error: domain: {type(exc).__name__}: {exc}\n")
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
