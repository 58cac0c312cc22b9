"""
Curve spec files (JSON) and deterministic serialization.

A spec is either explicit Fourier coefficients::

    {"kind": "fourier", "a0": 1.0, "harmonics": [{"k": 2, "cos": 0.1, "sin": 0.0}]}

or a named curve::

    {"kind": "named", "name": "hypocycloid", "params": {"k": 3, "amplitude": 1.0}}

Named curves and what they expand to:

===========  ============================================  ==================
name         params (defaults)                             expands to
===========  ============================================  ==================
circle       radius=1, center_x=0, center_y=0              FourierSupport
hypocycloid  k, amplitude=1, phase=0, offset=0             FourierSupport
exp_sin      amplitude=2, truncation_degree=12             FourierSupport
cycloid      t0=0.05, t1=pi-0.05                           OpenCurve
logspiral    c, scale=1, t0=-pi, t1=pi                     OpenCurve
parabola     t0=-3, t1=3                                   OpenCurve
===========  ============================================  ==================

``hypocycloid`` is ``offset + amplitude cos(k phi + phase)``; ``exp_sin`` is
the Fourier truncation of ``exp(amplitude sin(phi))``.
"""

import json
import math
import os
import tempfile
from dataclasses import dataclass, field

import jsonschema
import numpy as np

from .oracle import ParametricCurve, cycloid_support, exponential_support, parabola_curve
from .support import TWO_PI, FourierSupport

EXP_SIN_NODES = 4096

SCHEMA = {
    "type": "object",
    "required": ["kind"],
    "oneOf": [
        {
            "properties": {
                "kind": {"const": "fourier"},
                "a0": {"type": "number"},
                "harmonics": {
                    "type": "array",
                    "items": {
                        "type": "object",
                        "required": ["k"],
                        "properties": {
                            "k": {"type": "integer", "minimum": 1},
                            "cos": {"type": "number"},
                            "sin": {"type": "number"},
                        },
                        "additionalProperties": False,
                    },
                },
                "free_constant": {"type": "boolean"},
            },
            "required": ["kind"],
        },
        {
            "properties": {
                "kind": {"const": "named"},
                "name": {
                    "enum": ["circle", "hypocycloid", "cycloid", "logspiral", "parabola", "exp_sin"]
                },
                "params": {"type": "object", "additionalProperties": {"type": "number"}},
            },
            "required": ["kind", "name"],
        },
    ],
}


class SpecError(ValueError):
    """Malformed or unreadable curve spec."""


@dataclass(frozen=True)
class CurveSpec:
    kind: str
    a0: float = 0.0
    harmonics: tuple = ()
    name: str = ""
    params: dict = field(default_factory=dict)

    @classmethod
    def from_dict(cls, data):
        try:
            jsonschema.validate(data, SCHEMA)
        except jsonschema.ValidationError as exc:
            raise SpecError(f"invalid curve spec: {exc.message}") from None
        if data["kind"] == "fourier":
            harmonics = tuple(
                (int(h["k"]), float(h.get("cos", 0.0)), float(h.get("sin", 0.0)))
                for h in data.get("harmonics", [])
            )
            return cls("fourier", float(data.get("a0", 0.0)), harmonics)
        return cls("named", name=data["name"], params=dict(data.get("params", {})))

    @classmethod
    def from_support(cls, p):
        return cls("fourier", p.a0, tuple(p.harmonics()))

    def to_dict(self):
        if self.kind == "fourier":
            return {
                "kind": "fourier",
                "a0": self.a0,
                "harmonics": [{"k": k, "cos": c, "sin": s} for k, c, s in self.harmonics],
            }
        return {"kind": "named", "name": self.name, "params": dict(sorted(self.params.items()))}


@dataclass(frozen=True)
class OpenCurve:
    """A named curve that is not closed: a parametric curve and, if known, its support."""

    name: str
    curve: ParametricCurve
    support: object = None


def load_spec(path):
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise SpecError(f"cannot read curve spec {path}: {exc}") from None
    return CurveSpec.from_dict(data)


def exp_sin_support(amplitude=2.0, degree=12):
    phi = np.arange(EXP_SIN_NODES) * (TWO_PI / EXP_SIN_NODES)
    return FourierSupport.from_samples(np.exp(amplitude * np.sin(phi)), degree)


def expand(spec):
    """Turn a spec into a :class:`FourierSupport` or an :class:`OpenCurve`."""
    if spec.kind == "fourier":
        try:
            return FourierSupport.from_harmonics(spec.a0, spec.harmonics)
        except ValueError as exc:
            raise SpecError(str(exc)) from None
    p = spec.params
    name = spec.name
    try:
        if name == "circle":
            return FourierSupport(p.get("radius", 1.0), [p.get("center_x", 0.0)],
                                  [p.get("center_y", 0.0)])
        if name == "hypocycloid":
            return FourierSupport.hypocycloid(
                int(p["k"]), p.get("amplitude", 1.0), p.get("phase", 0.0), p.get("offset", 0.0)
            )
        if name == "exp_sin":
            return exp_sin_support(p.get("amplitude", 2.0), int(p.get("truncation_degree", 12)))
        if name == "cycloid":
            support = cycloid_support()
            return OpenCurve(name, support.curve((p.get("t0", 0.05), p.get("t1", math.pi - 0.05))),
                             support)
        if name == "logspiral":
            support = exponential_support([(p.get("scale", 1.0), p["c"])])
            return OpenCurve(name, support.curve((p.get("t0", -math.pi), p.get("t1", math.pi))),
                             support)
        if name == "parabola":
            return OpenCurve(name, parabola_curve(p.get("t0", -3.0), p.get("t1", 3.0)))
    except KeyError as exc:
        raise SpecError(f"named curve {name!r} needs parameter {exc.args[0]!r}") from None
    raise SpecError(f"unknown named curve {name!r}")


# -- deterministic output ----------------------------------------------------

def fmt(x):
    """17 significant digits; NaN/inf become JSON null."""
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    x = float(x)
    if not math.isfinite(x):
        return "null"
    return "%.17g" % x


def dumps(obj, indent=0):
    """JSON text with fixed key order (insertion order) and 17-digit floats."""
    pad = "  " * (indent + 1)
    end = "  " * indent
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {dumps(v, indent + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        obj = list(obj)
        if not obj:
            return "[]"
        if all(not isinstance(v, (dict, list, tuple, np.ndarray)) for v in obj):
            return "[" + ", ".join(dumps(v) for v in obj) + "]"
        return "[\n" + ",\n".join(pad + dumps(v, indent + 1) for v in obj) + "\n" + end + "]"
    if isinstance(obj, str):
        return json.dumps(obj)
    if obj is None:
        return "null"
    return fmt(obj)


def write_atomic(path, text):
    """Write ``text`` to ``path`` via a temporary file and rename."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def support_to_json(p, **extra):
    data = CurveSpec.from_support(p).to_dict()
    data.update(extra)
    return dumps(data) + "\n"
