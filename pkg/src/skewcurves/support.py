"""
Hedgehogs described by truncated Fourier support functions.

A support function is stored as real cosine/sine pairs::

    p(phi) = a0 + sum_k  cos[k] * cos(k phi) + sin[k] * sin(k phi)

The complex coefficient of ``e^{i k phi}`` is ``a_k = (cos[k] - i sin[k]) / 2``
with ``a_{-k} = conj(a_k)``; it is only ever a derived view.
"""

from dataclasses import dataclass, field

import numpy as np

from ._numerics import bisect, dead_band_signs, sign_change_brackets
from .errors import DegenerateCurveError

TWO_PI = 2.0 * np.pi

#: default grid for sign counting and cusp detection
COUNT_GRID = 720
#: default node count for the uniform (trapezoid) quadrature
QUAD_NODES = 1024
ZERO_BAND = 1e-9


def _frozen(arr):
    arr = np.array(arr, dtype=float)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class FourierSupport:
    """Support function ``p(phi)`` of a hedgehog as a trigonometric polynomial.

    ``cos`` and ``sin`` hold the coefficients of harmonics ``k = 1..len``;
    entry ``i`` belongs to ``k = i + 1``.
    """

    a0: float = 0.0
    cos: np.ndarray = field(default_factory=lambda: np.zeros(0))
    sin: np.ndarray = field(default_factory=lambda: np.zeros(0))

    def __post_init__(self):
        c = np.atleast_1d(np.asarray(self.cos, dtype=float))
        s = np.atleast_1d(np.asarray(self.sin, dtype=float))
        n = max(c.size, s.size)
        c = np.pad(c, (0, n - c.size))
        s = np.pad(s, (0, n - s.size))
        if not (np.all(np.isfinite(c)) and np.all(np.isfinite(s)) and np.isfinite(self.a0)):
            raise ValueError("support coefficients must be finite")
        # trailing zero harmonics do not count towards the degree
        nz = np.flatnonzero((c != 0.0) | (s != 0.0))
        n = nz[-1] + 1 if nz.size else 0
        object.__setattr__(self, "a0", float(self.a0))
        object.__setattr__(self, "cos", _frozen(c[:n]))
        object.__setattr__(self, "sin", _frozen(s[:n]))

    # -- constructors ---------------------------------------------------
    @classmethod
    def from_harmonics(cls, a0=0.0, harmonics=()):
        """Build from ``(k, c_k, s_k)`` triples; every ``k >= 1`` must be distinct."""
        harmonics = list(harmonics)
        ks = [int(k) for k, _, _ in harmonics]
        if any(k < 1 for k in ks):
            raise ValueError("harmonic orders must be >= 1")
        if len(set(ks)) != len(ks):
            raise ValueError("harmonic orders must be distinct")
        d = max(ks, default=0)
        c = np.zeros(d)
        s = np.zeros(d)
        for k, ck, sk in harmonics:
            c[int(k) - 1] = ck
            s[int(k) - 1] = sk
        return cls(a0, c, s)

    @classmethod
    def from_complex(cls, coeffs):
        """Build from ``[a_0, a_1, ..., a_d]`` (non-negative frequencies only)."""
        coeffs = np.asarray(coeffs, dtype=complex)
        if coeffs.size == 0:
            return cls()
        return cls(coeffs[0].real, 2.0 * coeffs[1:].real, -2.0 * coeffs[1:].imag)

    @classmethod
    def hypocycloid(cls, k, amplitude=1.0, phase=0.0, offset=0.0):
        """``p = offset + amplitude * cos(k phi + phase)``."""
        if k == 0:
            return cls(offset + amplitude * np.cos(phase))
        return cls.from_harmonics(
            offset, [(k, amplitude * np.cos(phase), -amplitude * np.sin(phase))]
        )

    @classmethod
    def from_samples(cls, values, degree):
        """Fourier truncation of ``values`` sampled uniformly on ``[0, 2 pi)``."""
        values = np.asarray(values, dtype=float)
        n = values.size
        if degree >= n // 2:
            raise ValueError("degree too high for the number of samples")
        f = np.fft.rfft(values) / n
        return cls(f[0].real, 2.0 * f[1 : degree + 1].real, -2.0 * f[1 : degree + 1].imag)

    # -- views ------------------------------------------------------------
    @property
    def degree(self):
        return int(self.cos.size)

    @property
    def orders(self):
        return np.arange(1, self.degree + 1)

    def coefficients(self):
        """Complex coefficients ``a_0..a_d`` of ``e^{i k phi}``."""
        return np.concatenate([[complex(self.a0)], 0.5 * (self.cos - 1j * self.sin)])

    def harmonics(self):
        """Nonzero ``(k, c_k, s_k)`` triples."""
        return [
            (int(k), float(c), float(s))
            for k, c, s in zip(self.orders, self.cos, self.sin)
            if c != 0.0 or s != 0.0
        ]

    def padded(self, degree):
        """``(a0, cos, sin)`` with the harmonic arrays zero-padded to ``degree``."""
        if degree < self.degree:
            raise ValueError("cannot pad below the current degree")
        pad = degree - self.degree
        return self.a0, np.pad(self.cos, (0, pad)), np.pad(self.sin, (0, pad))

    def __add__(self, other):
        if not isinstance(other, FourierSupport):
            return FourierSupport(self.a0 + float(other), self.cos, self.sin)
        d = max(self.degree, other.degree)
        a, c1, s1 = self.padded(d)
        b, c2, s2 = other.padded(d)
        return FourierSupport(a + b, c1 + c2, s1 + s2)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-1.0) * other

    def __mul__(self, scale):
        scale = float(scale)
        return FourierSupport(scale * self.a0, scale * self.cos, scale * self.sin)

    __rmul__ = __mul__

    def __neg__(self):
        return -1.0 * self

    def allclose(self, other, atol=1e-12):
        d = max(self.degree, other.degree)
        a, c1, s1 = self.padded(d)
        b, c2, s2 = other.padded(d)
        return (
            abs(a - b) <= atol
            and np.allclose(c1, c2, rtol=0, atol=atol)
            and np.allclose(s1, s2, rtol=0, atol=atol)
        )

    def max_coefficient_diff(self, other):
        d = max(self.degree, other.degree)
        a, c1, s1 = self.padded(d)
        b, c2, s2 = other.padded(d)
        return float(max(abs(a - b), np.max(np.abs(c1 - c2), initial=0.0),
                         np.max(np.abs(s1 - s2), initial=0.0)))

    def __call__(self, phi, order=0):
        return evaluate(self, phi, order)

    def __repr__(self):
        terms = ", ".join(f"k={k}: ({c:.6g}, {s:.6g})" for k, c, s in self.harmonics())
        return f"FourierSupport(a0={self.a0:.6g}{', ' if terms else ''}{terms})"


@dataclass(frozen=True, eq=False)
class PlaneCurveSamples:
    """Ordered samples of a plane curve.

    ``cusp_flags[j]`` refers to the interval from sample ``j`` to ``j + 1``
    (wrapping to sample 0 for closed curves, so closed curves carry one
    flag per sample and open curves one fewer). Points may be NaN where a
    sample could not be computed.
    """

    points: np.ndarray
    params: np.ndarray
    cusp_flags: np.ndarray
    closed: bool = True

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float).reshape(-1, 2)
        par = np.asarray(self.params, dtype=float)
        flags = np.asarray(self.cusp_flags, dtype=bool)
        if pts.shape[0] != par.size or par.size < 2:
            raise ValueError("points and params must have equal length >= 2")
        if np.any(np.diff(par) <= 0):
            raise ValueError("params must be strictly increasing")
        expected = par.size if self.closed else par.size - 1
        if flags.size != expected:
            raise ValueError(f"expected {expected} cusp flags, got {flags.size}")
        object.__setattr__(self, "points", _frozen(pts))
        object.__setattr__(self, "params", _frozen(par))
        flags = flags.copy()
        flags.setflags(write=False)
        object.__setattr__(self, "cusp_flags", flags)

    def __len__(self):
        return self.params.size

    @property
    def n_cusps(self):
        return int(np.count_nonzero(self.cusp_flags))


def evaluate(p, phi, order=0):
    """Value or derivative of the support function, by termwise differentiation.

    Parameters
    ----------
    p : FourierSupport
    phi : float or array_like
    order : int
        0, 1 or 2 (higher orders also work; the oracle uses 3).

    Returns
    -------
    float or numpy.ndarray
    """
    if order < 0:
        raise ValueError("derivative order must be non-negative")
    phi = np.asarray(phi, dtype=float)
    out = np.full(phi.shape, p.a0 if order == 0 else 0.0)
    if p.degree:
        k = p.orders
        arg = np.multiply.outer(phi, k)
        cos_t, sin_t = np.cos(arg), np.sin(arg)
        # d^n/dphi^n cos(k phi) cycles through cos, -sin, -cos, sin (times k^n)
        m = order % 4
        if m == 0:
            dc, ds = cos_t, sin_t
        elif m == 1:
            dc, ds = -sin_t, cos_t
        elif m == 2:
            dc, ds = -cos_t, -sin_t
        else:
            dc, ds = sin_t, -cos_t
        kn = k.astype(float) ** order
        out = out + dc @ (kn * p.cos) + ds @ (kn * p.sin)
    return out if out.ndim else float(out)


def curve_point(p, phi):
    """Point of the hedgehog whose outward normal has direction ``phi``."""
    phi = np.asarray(phi, dtype=float)
    v = evaluate(p, phi, 0)
    dv = evaluate(p, phi, 1)
    c, s = np.cos(phi), np.sin(phi)
    pts = np.stack([v * c - dv * s, v * s + dv * c], axis=-1)
    return pts


def curvature_radius(p, phi):
    """``p(phi) + p''(phi)``; negative on the reversed arcs of a hedgehog."""
    return evaluate(p, phi, 0) + evaluate(p, phi, 2)


def quadrature_nodes(p, nodes=QUAD_NODES):
    # uniform trapezoid is exact for trig polynomials of degree < nodes;
    # products of two degree-d factors need nodes > 2d
    n = max(int(nodes), 4 * p.degree + 8)
    return np.arange(n) * (TWO_PI / n)


def _integrate(values):
    return float(np.sum(values) * TWO_PI / values.shape[-1])


def signed_length(p, method="closed"):
    """Signed length ``L = int_0^{2 pi} p dphi``.

    ``method="closed"`` returns ``2 pi a0``; ``"quadrature"`` integrates.
    """
    if method == "closed":
        return TWO_PI * p.a0
    if method == "quadrature":
        return _integrate(evaluate(p, quadrature_nodes(p)))
    raise ValueError(f"unknown method {method!r}")


def signed_area(p, method="quadrature"):
    """Signed area ``A = 1/2 int (p^2 - p'^2) dphi``.

    The coefficient form is ``pi * (a0^2 + 2 sum (1 - k^2) |a_k|^2)``.
    """
    if method == "quadrature":
        phi = quadrature_nodes(p)
        return 0.5 * _integrate(evaluate(p, phi) ** 2 - evaluate(p, phi, 1) ** 2)
    if method == "parseval":
        k = p.orders
        ak2 = 0.25 * (p.cos**2 + p.sin**2)
        return float(np.pi * (p.a0**2 + 2.0 * np.sum((1.0 - k**2) * ak2)))
    raise ValueError(f"unknown method {method!r}")


def radius_energy(p, method="quadrature"):
    """``R = int (p + p'')^2 dphi``; coefficient form ``2 pi (a0^2 + 2 sum (1-k^2)^2 |a_k|^2)``."""
    if method == "quadrature":
        return _integrate(curvature_radius(p, quadrature_nodes(p)) ** 2)
    if method == "parseval":
        k = p.orders
        ak2 = 0.25 * (p.cos**2 + p.sin**2)
        return float(TWO_PI * (p.a0**2 + 2.0 * np.sum((1.0 - k**2) ** 2 * ak2)))
    raise ValueError(f"unknown method {method!r}")


def steiner_point(p, method="closed"):
    """Curvature centroid ``(1/pi) int p(phi) (cos phi, sin phi) dphi``.

    In closed form this is just the first-harmonic pair ``(c_1, s_1)``.
    """
    if method == "closed":
        if p.degree == 0:
            return np.zeros(2)
        return np.array([p.cos[0], p.sin[0]])
    if method == "quadrature":
        phi = quadrature_nodes(p)
        v = evaluate(p, phi)
        return np.array([_integrate(v * np.cos(phi)), _integrate(v * np.sin(phi))]) / np.pi
    raise ValueError(f"unknown method {method!r}")


def sign_changes(values, circular=True, rel_tol=ZERO_BAND):
    """Number of sign changes in an ordered list of samples.

    Entries with ``|v| < rel_tol * max|v|`` are skipped. With ``circular``
    the last sample is compared with the first.
    """
    values = np.asarray(values, dtype=float)
    if values.size < 2:
        raise ValueError("need at least two samples")
    signs, scale = dead_band_signs(values, rel_tol)
    if scale == 0.0:
        raise DegenerateCurveError("function is identically zero")
    return len(sign_change_brackets(signs, circular))


def _radius_support(p):
    k = p.orders
    return FourierSupport(p.a0, (1.0 - k**2) * p.cos, (1.0 - k**2) * p.sin)


def _check_not_point(p):
    r = _radius_support(p)
    if r.a0 == 0.0 and not np.any(r.cos) and not np.any(r.sin):
        raise DegenerateCurveError("support is a pure first harmonic: the hedgehog is a point")


def cusp_locations(p, n=COUNT_GRID, xtol=1e-10):
    """Normal directions in ``[0, 2 pi)`` where the curvature radius changes sign.

    Each sign change on the ``n``-point grid is refined by bisection.
    """
    _check_not_point(p)
    phi = np.arange(n) * (TWO_PI / n)
    signs, _ = dead_band_signs(curvature_radius(p, phi))
    out = []
    for i, j in sign_change_brackets(signs, circular=True):
        lo, hi = phi[i], phi[j]
        if hi <= lo:
            hi += TWO_PI
        root = bisect(lambda t: curvature_radius(p, t), lo, hi, xtol=xtol)
        out.append(root % TWO_PI)
    return np.sort(np.array(out))


def cusp_count(p, n=COUNT_GRID):
    """Number of cusps: sign changes of ``p + p''`` over one period."""
    return int(cusp_locations(p, n).size)


def _interval_flags(values):
    signs, scale = dead_band_signs(values)
    if scale == 0.0:
        return np.zeros(values.size, dtype=bool)
    nz = np.flatnonzero(signs)
    # a sample inside the dead band inherits the sign of the last nonzero one
    filled = signs.copy()
    last = signs[nz[-1]]
    for i in range(values.size):
        if filled[i] == 0.0:
            filled[i] = last
        else:
            last = filled[i]
    return filled != np.roll(filled, -1)


def sample_curve(p, n):
    """``n`` uniform samples of the hedgehog with per-interval cusp flags."""
    if n < 8:
        raise ValueError("need at least 8 samples")
    phi = np.arange(n) * (TWO_PI / n)
    flags = _interval_flags(curvature_radius(p, phi))
    return PlaneCurveSamples(curve_point(p, phi), phi, flags, closed=True)


def amplitudes(p):
    """Harmonic amplitudes ``{k: |a_k|}``; ``|a_0| = |a0|``.

    Only nonzero amplitudes are listed; use ``.get(k, 0.0)`` for the rest.
    """
    out = {0: abs(p.a0)} if p.a0 != 0.0 else {}
    amp = 0.5 * np.hypot(p.cos, p.sin)
    for k, a in zip(p.orders, amp):
        if a > 0.0:
            out[int(k)] = float(a)
    return out


def amplitude_array(p, degree=None):
    """Dense ``[|a_0|, ..., |a_d|]``."""
    d = p.degree if degree is None else degree
    a, c, s = p.padded(d)
    return np.concatenate([[abs(a)], 0.5 * np.hypot(c, s)])
